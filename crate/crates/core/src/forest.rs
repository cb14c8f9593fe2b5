//! Ordered directed rooted forests on subsets of `{1..n}`.
//!
//! Child order is significant (left to right as drawn). Trees of a forest are
//! kept sorted by root, which fixes the serialized form `(root child ...)`.
//! Isolated vertices are allowed in forests (singleton trees) but carry no
//! edges; words and epsilon functions ignore them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tree {
    pub root: u32,
    #[serde(default)]
    pub children: Vec<Tree>,
}

impl Tree {
    pub fn leaf(root: u32) -> Self {
        Tree { root, children: Vec::new() }
    }

    pub fn node(root: u32, children: Vec<Tree>) -> Self {
        Tree { root, children }
    }

    pub fn vertices(&self) -> Vec<u32> {
        let mut out = vec![self.root];
        for c in &self.children {
            out.extend(c.vertices());
        }
        out
    }

    /// Directed edges `(child, parent)` in level order (top level first,
    /// left to right within a level).
    pub fn edges_level_order(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(self);
        while let Some(v) = queue.pop_front() {
            for c in &v.children {
                out.push((c.root, v.root));
                queue.push_back(c);
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(|c| 1 + c.edge_count()).sum()
    }

    pub fn find(&self, v: u32) -> Option<&Tree> {
        if self.root == v {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(v))
    }

    fn is_increasing(&self) -> bool {
        self.children
            .iter()
            .all(|c| c.root > self.root && c.is_increasing())
    }

    /// Children labels ascend left to right at every inner vertex.
    fn is_augmented(&self) -> bool {
        self.children.windows(2).all(|w| w[0].root < w[1].root)
            && self.children.iter().all(|c| c.is_augmented())
    }

    /// Inversion number of the root's child sequence read left to right.
    pub fn inv_at_root(&self) -> usize {
        let seq: Vec<u32> = self.children.iter().map(|c| c.root).collect();
        let mut inv = 0;
        for a in 0..seq.len() {
            for b in a + 1..seq.len() {
                if seq[a] > seq[b] {
                    inv += 1;
                }
            }
        }
        inv
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.root)?;
        for c in &self.children {
            write!(f, " {c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forest {
    trees: Vec<Tree>,
}

impl Forest {
    pub fn empty() -> Self {
        Forest { trees: Vec::new() }
    }

    /// Validates vertex-disjointness and sorts trees by root.
    pub fn from_trees(mut trees: Vec<Tree>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for t in &trees {
            for v in t.vertices() {
                if v == 0 {
                    return Err(Error::MalformedForest("vertices are 1-based".into()));
                }
                if !seen.insert(v) {
                    return Err(Error::MalformedForest(format!("vertex {v} repeated")));
                }
            }
        }
        trees.sort_by_key(|t| t.root);
        Ok(Forest { trees })
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    /// Component trees that carry at least one edge.
    pub fn edge_trees(&self) -> impl Iterator<Item = &Tree> {
        self.trees.iter().filter(|t| !t.children.is_empty())
    }

    pub fn vertices(&self) -> BTreeSet<u32> {
        self.trees.iter().flat_map(|t| t.vertices()).collect()
    }

    pub fn roots(&self) -> Vec<u32> {
        self.trees.iter().map(|t| t.root).collect()
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.trees
            .iter()
            .flat_map(|t| t.edges_level_order())
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.trees.iter().map(|t| t.edge_count()).sum()
    }

    pub fn contains_edge(&self, i: u32, j: u32) -> bool {
        self.trees
            .iter()
            .any(|t| t.edges_level_order().contains(&(i, j)))
    }

    /// Adds missing vertices of `1..=n` as singleton trees.
    pub fn with_singletons(&self, n: u32) -> Forest {
        let present = self.vertices();
        let mut trees = self.trees.clone();
        for v in 1..=n {
            if !present.contains(&v) {
                trees.push(Tree::leaf(v));
            }
        }
        Forest::from_trees(trees).expect("fresh singletons stay disjoint")
    }

    /// Drops singleton trees.
    pub fn without_singletons(&self) -> Forest {
        Forest {
            trees: self
                .trees
                .iter()
                .filter(|t| !t.children.is_empty())
                .cloned()
                .collect(),
        }
    }

    /// Contraction along an existing edge `i -> j`: vertex `i` is removed and
    /// its children are spliced into `j`'s child list at `i`'s position.
    pub fn contract(&self, i: u32, j: u32) -> Result<Forest> {
        if !self.contains_edge(i, j) {
            return Err(Error::NoSuchEdge(i, j));
        }
        fn walk(t: &Tree, i: u32, j: u32) -> Tree {
            let mut children = Vec::new();
            for c in &t.children {
                if t.root == j && c.root == i {
                    for gc in &c.children {
                        children.push(walk(gc, i, j));
                    }
                } else {
                    children.push(walk(c, i, j));
                }
            }
            Tree { root: t.root, children }
        }
        let trees = self.trees.iter().map(|t| walk(t, i, j)).collect();
        Forest::from_trees(trees)
    }

    pub fn classify(&self) -> ForestClass {
        let increasing = self.trees.iter().all(|t| t.is_increasing());
        let nearly = self.trees.iter().all(|t| {
            // edges into the root are unconstrained; subtrees must increase
            t.children.iter().all(|c| c.is_increasing())
        });
        let augmented = self.trees.iter().all(|t| t.is_augmented());
        ForestClass {
            ordered_rooted: true,
            increasing,
            nearly_increasing: nearly,
            augmented_increasing: increasing && augmented,
            augmented_nearly_increasing: nearly && augmented,
        }
    }

    pub fn parse(s: &str) -> Result<Forest> {
        let mut tokens = tokenize(s)?;
        tokens.reverse();
        let mut trees = Vec::new();
        while !tokens.is_empty() {
            trees.push(parse_tree(&mut tokens)?);
        }
        Forest::from_trees(trees)
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.trees.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Num(u32),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                out.push(Token::Open);
                chars.next();
            }
            ')' => {
                out.push(Token::Close);
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_digit() => {
                let mut v = 0u32;
                while let Some(&d) = chars.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        v = v * 10 + dig;
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Num(v));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}' in forest")));
            }
        }
    }
    Ok(out)
}

fn parse_tree(tokens: &mut Vec<Token>) -> Result<Tree> {
    match tokens.pop() {
        Some(Token::Open) => {}
        t => return Err(Error::Parse(format!("expected '(' in forest, got {t:?}"))),
    }
    let root = match tokens.pop() {
        Some(Token::Num(v)) => v,
        t => return Err(Error::Parse(format!("expected root label, got {t:?}"))),
    };
    let mut children = Vec::new();
    loop {
        match tokens.last() {
            Some(Token::Open) => children.push(parse_tree(tokens)?),
            Some(Token::Close) => {
                tokens.pop();
                break;
            }
            t => return Err(Error::Parse(format!("expected subtree or ')', got {t:?}"))),
        }
    }
    Ok(Tree { root, children })
}

/// Classification flags of a forest.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ForestClass {
    pub ordered_rooted: bool,
    pub increasing: bool,
    pub nearly_increasing: bool,
    pub augmented_increasing: bool,
    pub augmented_nearly_increasing: bool,
}

/// Target class for enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisClass {
    Increasing,
    NearlyIncreasing,
    AugmentedIncreasing,
    AugmentedNearlyIncreasing,
}

impl BasisClass {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "inc" => Ok(Self::Increasing),
            "ninc" => Ok(Self::NearlyIncreasing),
            "aug-inc" => Ok(Self::AugmentedIncreasing),
            "aug-ninc" => Ok(Self::AugmentedNearlyIncreasing),
            other => Err(Error::Parse(format!(
                "unknown class '{other}' (expected inc|ninc|aug-inc|aug-ninc)"
            ))),
        }
    }

    fn augmented(&self) -> bool {
        matches!(self, Self::AugmentedIncreasing | Self::AugmentedNearlyIncreasing)
    }

    fn fully_increasing(&self) -> bool {
        matches!(self, Self::Increasing | Self::AugmentedIncreasing)
    }
}

/// A set partition of `{1..n}` with one chosen root per block; blocks are
/// sorted by their minima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionWithRoots {
    blocks: Vec<Vec<u32>>,
    roots: Vec<u32>,
}

impl PartitionWithRoots {
    pub fn new(mut blocks: Vec<Vec<u32>>, roots: Vec<u32>) -> Result<Self> {
        for b in &mut blocks {
            b.sort_unstable();
            if b.is_empty() {
                return Err(Error::InvalidInput("empty partition block".into()));
            }
        }
        blocks.sort_by_key(|b| b[0]);
        let mut seen = BTreeSet::new();
        for b in &blocks {
            for &v in b {
                if !seen.insert(v) {
                    return Err(Error::InvalidInput(format!("vertex {v} repeated in partition")));
                }
            }
        }
        let n = seen.len() as u32;
        if seen.iter().next_back() != Some(&n) || seen.iter().next() != Some(&1) {
            return Err(Error::InvalidInput("blocks must cover 1..n".into()));
        }
        if roots.len() != blocks.len() {
            return Err(Error::InvalidInput("one root per block required".into()));
        }
        for (b, &r) in blocks.iter().zip(&roots) {
            if !b.contains(&r) {
                return Err(Error::InvalidInput(format!("root {r} not in its block")));
            }
        }
        Ok(Self { blocks, roots })
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn roots(&self) -> &[u32] {
        &self.roots
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// All set partitions of `items` (assumed sorted) into nonempty blocks;
/// blocks sorted by minima within each partition.
pub fn all_set_partitions(items: &[u32]) -> Vec<Vec<Vec<u32>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let rest = &items[1..];
    let mut out = Vec::new();
    for mut sub in all_set_partitions(rest) {
        // first joins an existing block or opens its own
        for k in 0..sub.len() {
            let mut copy = sub.clone();
            copy[k].insert(0, first);
            out.push(copy);
        }
        sub.insert(0, vec![first]);
        out.push(sub);
    }
    for p in &mut out {
        p.sort_by_key(|b| b[0]);
    }
    out
}

pub fn set_partitions_k(items: &[u32], k: usize) -> Vec<Vec<Vec<u32>>> {
    all_set_partitions(items)
        .into_iter()
        .filter(|p| p.len() == k)
        .collect()
}

/// All partitions of `{1..n}` into `blocks` blocks, with every compatible
/// root vector.
pub fn partitions_with_roots(n: u32, blocks: usize) -> Vec<PartitionWithRoots> {
    let items: Vec<u32> = (1..=n).collect();
    let mut out = Vec::new();
    for p in set_partitions_k(&items, blocks) {
        let choices: Vec<&Vec<u32>> = p.iter().collect();
        let mut idx = vec![0usize; choices.len()];
        loop {
            let roots: Vec<u32> = idx.iter().zip(&choices).map(|(&i, b)| b[i]).collect();
            out.push(PartitionWithRoots::new(p.clone(), roots).expect("valid by construction"));
            // advance multi-index
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn cartesian<T: Clone>(parts: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for p in parts {
        let mut next = Vec::new();
        for prefix in &out {
            for item in p {
                let mut row = prefix.clone();
                row.push(item.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// Increasing trees on `block` rooted at its minimum: every vertex above the
/// first attaches below some smaller vertex. Children sorted ascending gives
/// the augmented representatives.
fn increasing_parent_assignments(block: &[u32]) -> Vec<Vec<(u32, u32)>> {
    // list of (vertex, parent) pairs for vertices after the min
    let mut out: Vec<Vec<(u32, u32)>> = vec![vec![]];
    for m in 1..block.len() {
        let v = block[m];
        let mut next = Vec::new();
        for prefix in &out {
            for &p in &block[..m] {
                let mut row = prefix.clone();
                row.push((v, p));
                next.push(row);
            }
        }
        out = next;
    }
    out
}

fn tree_from_parents(root: u32, parents: &[(u32, u32)], augmented_only: bool) -> Vec<Tree> {
    // children grouped by parent, ascending
    let mut child_map: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for &(v, p) in parents {
        child_map.entry(p).or_default().push(v);
    }
    for kids in child_map.values_mut() {
        kids.sort_unstable();
    }
    fn build(v: u32, child_map: &std::collections::BTreeMap<u32, Vec<u32>>, order: &dyn Fn(&[u32]) -> Vec<Vec<u32>>) -> Vec<Tree> {
        let kids = child_map.get(&v).cloned().unwrap_or_default();
        let orderings = order(&kids);
        let mut out = Vec::new();
        for ord in orderings {
            let sub_choices: Vec<Vec<Tree>> =
                ord.iter().map(|&c| build(c, child_map, order)).collect();
            for combo in cartesian(&sub_choices) {
                out.push(Tree::node(v, combo));
            }
        }
        out
    }
    if augmented_only {
        build(root, &child_map, &|kids| vec![kids.to_vec()])
    } else {
        build(root, &child_map, &|kids| permutations(kids))
    }
}

/// All trees of `class` on `block` with the given root. Empty when the class
/// forces the root to be the block minimum and `root` is not.
pub fn trees_on(block: &[u32], root: u32, class: BasisClass) -> Vec<Tree> {
    assert!(block.contains(&root));
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    if block.len() == 1 {
        return vec![Tree::leaf(root)];
    }
    if class.fully_increasing() {
        if root != sorted[0] {
            return Vec::new();
        }
        let mut out = Vec::new();
        for parents in increasing_parent_assignments(&sorted) {
            out.extend(tree_from_parents(root, &parents, class.augmented()));
        }
        out
    } else {
        // nearly increasing: subtrees are increasing trees rooted at their
        // minima; the root's child blocks may come in any order (augmented:
        // ascending by subtree root).
        let rest: Vec<u32> = sorted.iter().copied().filter(|&v| v != root).collect();
        let sub_class = if class.augmented() {
            BasisClass::AugmentedIncreasing
        } else {
            BasisClass::Increasing
        };
        let mut out = Vec::new();
        for partition in all_set_partitions(&rest) {
            if partition.is_empty() {
                continue;
            }
            let per_block: Vec<Vec<Tree>> = partition
                .iter()
                .map(|b| trees_on(b, b[0], sub_class))
                .collect();
            for combo in cartesian(&per_block) {
                if class.augmented() {
                    // blocks sorted by min == subtree roots ascending
                    out.push(Tree::node(root, combo.clone()));
                } else {
                    for ord in permutations(&combo) {
                        out.push(Tree::node(root, ord));
                    }
                }
            }
        }
        out
    }
}

/// Exhaustive, duplicate-free enumeration of class forests on a partition
/// with fixed roots, in lexicographic order of the serialized form.
pub fn enumerate_forests_on(spec: &PartitionWithRoots, class: BasisClass) -> Vec<Forest> {
    let per_block: Vec<Vec<Tree>> = spec
        .blocks()
        .iter()
        .zip(spec.roots())
        .map(|(b, &r)| trees_on(b, r, class))
        .collect();
    let mut out: Vec<Forest> = cartesian(&per_block)
        .into_iter()
        .map(|trees| Forest::from_trees(trees).expect("disjoint blocks"))
        .collect();
    out.sort_by_key(|f| f.to_string());
    out
}

/// Enumeration over all partitions of `{1..n}` into `n - s` blocks and all
/// compatible roots. Forests carry `s` edges.
pub fn enumerate_forests(n: u32, s: u32, class: BasisClass) -> Vec<Forest> {
    assert!(s < n, "s must be at most n - 1");
    let mut out = Vec::new();
    for pwr in partitions_with_roots(n, (n - s) as usize) {
        out.extend(enumerate_forests_on(&pwr, class));
    }
    out.sort_by_key(|f| f.to_string());
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_forest() -> Forest {
        Forest::parse("(2 (6 (5)) (1) (7 (3) (8)) (4))").unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = figure_forest();
        assert_eq!(f.to_string(), "(2 (6 (5)) (1) (7 (3) (8)) (4))");
        assert_eq!(f.edge_count(), 7);
    }

    #[test]
    fn classify_examples() {
        // path 3 -> 2 -> 1: increasing and augmented increasing
        let path = Forest::parse("(1 (2 (3)))").unwrap();
        let c = path.classify();
        assert!(c.increasing && c.augmented_increasing && c.nearly_increasing);

        // single edge 1 -> 2: nearly increasing, not increasing
        let e = Forest::parse("(2 (1))").unwrap();
        let c = e.classify();
        assert!(!c.increasing && c.nearly_increasing && c.augmented_nearly_increasing);

        // star with children (2, 3): augmented increasing; (3, 2): not augmented
        let s1 = Forest::parse("(1 (2) (3))").unwrap();
        assert!(s1.classify().augmented_increasing);
        let s2 = Forest::parse("(1 (3) (2))").unwrap();
        let c2 = s2.classify();
        assert!(c2.increasing && !c2.augmented_increasing);
    }

    #[test]
    fn malformed_forest_rejected() {
        assert!(matches!(
            Forest::from_trees(vec![Tree::leaf(1), Tree::leaf(1)]),
            Err(Error::MalformedForest(_))
        ));
    }

    #[test]
    fn contract_examples() {
        let f = Forest::parse("(1 (2 (3)))").unwrap();
        assert_eq!(f.contract(2, 1).unwrap().to_string(), "(1 (3))");

        let g = Forest::parse("(1 (2))").unwrap();
        assert_eq!(g.contract(2, 1).unwrap().to_string(), "(1)");

        let fig = figure_forest();
        let c = fig.contract(5, 6).unwrap();
        assert_eq!(c.to_string(), "(2 (6) (1) (7 (3) (8)) (4))");

        assert!(matches!(g.contract(1, 2), Err(Error::NoSuchEdge(1, 2))));
    }

    #[test]
    fn contract_splices_in_place() {
        let f = Forest::parse("(2 (6 (5)) (1) (7 (3) (8)) (4))").unwrap();
        let c = f.contract(7, 2).unwrap();
        assert_eq!(c.to_string(), "(2 (6 (5)) (1) (3) (8) (4))");
    }

    #[test]
    fn inv_at_root_examples() {
        let t = Forest::parse("(1 (3) (2))").unwrap().trees()[0].clone();
        assert_eq!(t.inv_at_root(), 1);
        let t = Forest::parse("(1 (2))").unwrap().trees()[0].clone();
        assert_eq!(t.inv_at_root(), 0);
        let t = Forest::parse("(1 (4) (3) (2))").unwrap().trees()[0].clone();
        assert_eq!(t.inv_at_root(), 3);
    }

    #[test]
    fn enumerate_counts() {
        // n=3, s=2, augmented increasing trees: exactly (3-1)! = 2
        let trees = enumerate_forests(3, 2, BasisClass::AugmentedIncreasing);
        assert_eq!(trees.len(), 2);
        let forms: Vec<String> = trees.iter().map(|t| t.to_string()).collect();
        assert!(forms.contains(&"(1 (2 (3)))".to_string()));
        assert!(forms.contains(&"(1 (2) (3))".to_string()));

        // n=3, s=1, augmented nearly increasing: 6 single edges
        let forests = enumerate_forests(3, 1, BasisClass::AugmentedNearlyIncreasing);
        assert_eq!(forests.len(), 6);

        // n=2, s=0: one edgeless forest
        let forests = enumerate_forests(2, 0, BasisClass::AugmentedNearlyIncreasing);
        assert_eq!(forests.len(), 1);
        assert_eq!(forests[0].edge_count(), 0);
    }

    #[test]
    fn aug_increasing_tree_count_matches_recursive_formula() {
        // independent count: each vertex beyond the minimum picks a smaller
        // parent, giving (k-1)! trees on k vertices
        for k in 1..=7u32 {
            let block: Vec<u32> = (1..=k).collect();
            let trees = trees_on(&block, 1, BasisClass::AugmentedIncreasing);
            let expect: usize = (1..k as usize).product();
            assert_eq!(trees.len(), expect, "k = {k}");
        }
    }

    #[test]
    fn increasing_trees_root_is_minimum() {
        for t in trees_on(&[1, 2, 3, 4], 1, BasisClass::Increasing) {
            assert_eq!(t.root, 1);
            assert!(t.is_increasing());
        }
        assert!(trees_on(&[1, 2, 3], 2, BasisClass::Increasing).is_empty());
    }

    #[test]
    fn edge_count_matches_partition() {
        for pwr in partitions_with_roots(4, 2) {
            for f in enumerate_forests_on(&pwr, BasisClass::AugmentedNearlyIncreasing) {
                assert_eq!(f.edge_count(), 4 - pwr.block_count());
            }
        }
    }

    #[test]
    fn forest_json_round_trip() {
        let f = figure_forest();
        let json = serde_json::to_string(f.trees()).unwrap();
        let trees: Vec<Tree> = serde_json::from_str(&json).unwrap();
        assert_eq!(Forest::from_trees(trees).unwrap(), f);
    }
}
