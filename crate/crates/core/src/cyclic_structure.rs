//! Finite trees as prefix-closed sets of child-index sequences, cyclic
//! trees with a bud-to-companion map, local cycles, strong connectivity
//! and unfolding into cycle normal form.

use std::collections::{BTreeMap, BTreeSet};

pub type NodePath = Vec<usize>;

/// `true` if `a` is a strict prefix of `b`.
pub fn strict_prefix(a: &[usize], b: &[usize]) -> bool {
    a.len() < b.len() && b[..a.len()] == *a
}

pub fn prefix(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && b[..a.len()] == *a
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicTree {
    /// Non-empty, prefix-closed set of node paths.
    pub nodes: BTreeSet<NodePath>,
    /// Partial map from leaves to inner nodes.
    pub beta: BTreeMap<NodePath, NodePath>,
}

impl CyclicTree {
    pub fn new(nodes: BTreeSet<NodePath>, beta: BTreeMap<NodePath, NodePath>) -> Result<Self, String> {
        let t = CyclicTree { nodes, beta };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), String> {
        if !self.nodes.contains(&Vec::new()) {
            return Err("tree lacks a root".into());
        }
        for n in &self.nodes {
            if !n.is_empty() {
                let parent = n[..n.len() - 1].to_vec();
                if !self.nodes.contains(&parent) {
                    return Err(format!("tree not prefix-closed at {n:?}"));
                }
                // children must be numbered contiguously from 0
                let last = *n.last().unwrap();
                if last > 0 {
                    let mut sib = n.clone();
                    *sib.last_mut().unwrap() = last - 1;
                    if !self.nodes.contains(&sib) {
                        return Err(format!("missing sibling before {n:?}"));
                    }
                }
            }
        }
        for (bud, comp) in &self.beta {
            if !self.is_leaf(bud) {
                return Err(format!("bud {bud:?} is not a leaf"));
            }
            if self.is_leaf(comp) || !self.nodes.contains(comp) {
                return Err(format!("companion {comp:?} is not an inner node"));
            }
        }
        Ok(())
    }

    pub fn root(&self) -> NodePath {
        Vec::new()
    }

    pub fn children(&self, n: &[usize]) -> Vec<NodePath> {
        let mut out = Vec::new();
        for i in 0.. {
            let mut c = n.to_vec();
            c.push(i);
            if self.nodes.contains(&c) {
                out.push(c);
            } else {
                break;
            }
        }
        out
    }

    pub fn is_leaf(&self, n: &[usize]) -> bool {
        let mut c = n.to_vec();
        c.push(0);
        !self.nodes.contains(&c)
    }

    pub fn leaves(&self) -> Vec<NodePath> {
        self.nodes.iter().filter(|n| self.is_leaf(n)).cloned().collect()
    }

    pub fn buds(&self) -> Vec<NodePath> {
        self.beta.keys().cloned().collect()
    }

    /// Cycle normal form: every companion is a strict ancestor of its bud.
    pub fn is_cycle_normal(&self) -> bool {
        self.beta.iter().all(|(bud, comp)| strict_prefix(comp, bud))
    }

    /// The path `[beta(t), t]` from companion down to bud, inclusive.
    pub fn local_cycle(&self, bud: &[usize]) -> Result<Vec<NodePath>, String> {
        let comp = self
            .beta
            .get(bud)
            .ok_or_else(|| format!("{bud:?} is not a bud"))?;
        if !strict_prefix(comp, bud) {
            return Err(format!("companion {comp:?} is not an ancestor of {bud:?}"));
        }
        let mut out = Vec::new();
        for len in comp.len()..=bud.len() {
            out.push(bud[..len].to_vec());
        }
        Ok(out)
    }

    /// Union of the local cycles of the given buds.
    pub fn covered_set(&self, eta: &BTreeSet<NodePath>) -> BTreeSet<NodePath> {
        let mut out = BTreeSet::new();
        for bud in eta {
            if let Ok(cycle) = self.local_cycle(bud) {
                out.extend(cycle);
            }
        }
        out
    }

    /// Edges of the cycle graph restricted to `covered`, using tree edges
    /// plus the back edges of the buds in `eta`.
    fn cycle_edges(
        &self,
        covered: &BTreeSet<NodePath>,
        eta: &BTreeSet<NodePath>,
    ) -> BTreeMap<NodePath, Vec<NodePath>> {
        let mut edges: BTreeMap<NodePath, Vec<NodePath>> = BTreeMap::new();
        for n in covered {
            let mut outs = Vec::new();
            for c in self.children(n) {
                if covered.contains(&c) {
                    outs.push(c);
                }
            }
            if eta.contains(n) {
                if let Some(comp) = self.beta.get(n) {
                    if covered.contains(comp) {
                        outs.push(comp.clone());
                    }
                }
            }
            edges.insert(n.clone(), outs);
        }
        edges
    }

    /// There is a closed path visiting exactly the covered set of `eta`.
    pub fn is_strongly_connected(&self, eta: &BTreeSet<NodePath>) -> bool {
        if eta.is_empty() {
            return false;
        }
        if !eta.iter().all(|b| self.beta.contains_key(b) && strict_prefix(&self.beta[b], b)) {
            return false;
        }
        let covered = self.covered_set(eta);
        let edges = self.cycle_edges(&covered, eta);
        // single strongly connected component covering every node
        let start = covered.iter().next().unwrap().clone();
        let reach = |edges: &BTreeMap<NodePath, Vec<NodePath>>, from: &NodePath| {
            let mut seen: BTreeSet<NodePath> = BTreeSet::new();
            let mut stack = vec![from.clone()];
            while let Some(n) = stack.pop() {
                if !seen.insert(n.clone()) {
                    continue;
                }
                for m in edges.get(&n).into_iter().flatten() {
                    stack.push(m.clone());
                }
            }
            seen
        };
        let fwd = reach(&edges, &start);
        if fwd != covered {
            return false;
        }
        let mut redges: BTreeMap<NodePath, Vec<NodePath>> = BTreeMap::new();
        for (n, outs) in &edges {
            for m in outs {
                redges.entry(m.clone()).or_default().push(n.clone());
            }
        }
        let bwd = reach(&redges, &start);
        bwd == covered
    }

    /// All `buds`-maximal strongly connected bud sets; pairwise disjoint,
    /// and every strongly connected subset of `buds` is contained in
    /// exactly one of them.
    pub fn maximal_components(&self, buds: &BTreeSet<NodePath>) -> Vec<BTreeSet<NodePath>> {
        let covered = self.covered_set(buds);
        if covered.is_empty() {
            return Vec::new();
        }
        let edges = self.cycle_edges(&covered, buds);
        // Tarjan-style SCC via Kosaraju (sizes here are tiny)
        let nodes: Vec<NodePath> = covered.iter().cloned().collect();
        let index: BTreeMap<&NodePath, usize> = nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let n = nodes.len();
        let mut adj = vec![Vec::new(); n];
        let mut radj = vec![Vec::new(); n];
        for (from, outs) in &edges {
            for to in outs {
                adj[index[from]].push(index[to]);
                radj[index[to]].push(index[from]);
            }
        }
        let mut order = Vec::new();
        let mut seen = vec![false; n];
        fn dfs1(v: usize, adj: &[Vec<usize>], seen: &mut [bool], order: &mut Vec<usize>) {
            seen[v] = true;
            for &u in &adj[v] {
                if !seen[u] {
                    dfs1(u, adj, seen, order);
                }
            }
            order.push(v);
        }
        for v in 0..n {
            if !seen[v] {
                dfs1(v, &adj, &mut seen, &mut order);
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut ncomp = 0;
        for &v in order.iter().rev() {
            if comp[v] != usize::MAX {
                continue;
            }
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                if comp[u] != usize::MAX {
                    continue;
                }
                comp[u] = ncomp;
                for &w in &radj[u] {
                    if comp[w] == usize::MAX {
                        stack.push(w);
                    }
                }
            }
            ncomp += 1;
        }
        let mut groups: BTreeMap<usize, BTreeSet<NodePath>> = BTreeMap::new();
        for bud in buds {
            if let Some(&i) = index.get(bud) {
                groups.entry(comp[i]).or_default().insert(bud.clone());
            }
        }
        groups
            .into_values()
            .filter(|g| self.is_strongly_connected(g))
            .collect()
    }
}

/// Result of unfolding: the normal-form tree plus, for every new node, the
/// node of the input it originated from. Callers transport labels through
/// this map.
pub struct Unfolding {
    pub tree: CyclicTree,
    pub origin: BTreeMap<NodePath, NodePath>,
}

/// Unfolds a cyclic tree into cycle normal form: every bud's companion
/// becomes one of its ancestors. The infinite unravellings of input and
/// output agree. Fails when the node budget is exceeded.
pub fn unfold_cnf(tree: &CyclicTree, budget: usize) -> Result<Unfolding, String> {
    if tree.is_cycle_normal() {
        let origin = tree.nodes.iter().map(|n| (n.clone(), n.clone())).collect();
        return Ok(Unfolding { tree: tree.clone(), origin });
    }

    let mut nodes: BTreeSet<NodePath> = BTreeSet::new();
    let mut beta: BTreeMap<NodePath, NodePath> = BTreeMap::new();
    let mut origin: BTreeMap<NodePath, NodePath> = BTreeMap::new();

    // depth-first unravelling; cut when a state repeats on the branch
    struct Frame {
        state: NodePath,
        out: NodePath,
    }
    let mut stack = vec![Frame { state: tree.root(), out: Vec::new() }];
    // ancestors of the current output node, recorded as (state, out-path)
    // and recovered from the out-path structure
    let mut branch: BTreeMap<NodePath, Vec<(NodePath, NodePath)>> = BTreeMap::new();
    branch.insert(Vec::new(), Vec::new());

    while let Some(Frame { state, out }) = stack.pop() {
        if nodes.len() >= budget {
            return Err(format!("unfolding exceeded the node budget of {budget}"));
        }
        // follow back edges of buds transparently
        let mut state = state;
        while let Some(target) = tree.beta.get(&state) {
            state = target.clone();
        }
        let ancestors = branch.get(&out).cloned().unwrap_or_default();
        if let Some((_, anc_out)) = ancestors.iter().find(|(s, _)| *s == state) {
            // repeat on the branch: close with a bud
            nodes.insert(out.clone());
            origin.insert(out.clone(), state.clone());
            beta.insert(out.clone(), anc_out.clone());
            continue;
        }
        nodes.insert(out.clone());
        origin.insert(out.clone(), state.clone());
        let mut extended = ancestors;
        extended.push((state.clone(), out.clone()));
        for (i, child) in tree.children(&state).into_iter().enumerate() {
            let mut child_out = out.clone();
            child_out.push(i);
            branch.insert(child_out.clone(), extended.clone());
            stack.push(Frame { state: child, out: child_out });
        }
    }

    let tree2 = CyclicTree::new(nodes, beta)?;
    debug_assert!(tree2.is_cycle_normal());
    Ok(Unfolding { tree: tree2, origin })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(paths: &[&[usize]], beta: &[(&[usize], &[usize])]) -> CyclicTree {
        let nodes = paths.iter().map(|p| p.to_vec()).collect();
        let beta = beta.iter().map(|(a, b)| (a.to_vec(), b.to_vec())).collect();
        CyclicTree::new(nodes, beta).unwrap()
    }

    #[test]
    fn local_cycle_from_parent() {
        let t = tree(&[&[], &[0]], &[(&[0], &[])]);
        assert_eq!(t.local_cycle(&[0]).unwrap(), vec![vec![], vec![0]]);
    }

    #[test]
    fn covered_set_of_empty_is_empty() {
        let t = tree(&[&[], &[0]], &[(&[0], &[])]);
        assert!(t.covered_set(&BTreeSet::new()).is_empty());
    }

    #[test]
    fn singleton_is_strongly_connected() {
        let t = tree(&[&[], &[0]], &[(&[0], &[])]);
        let eta = [vec![0usize]].into_iter().collect();
        assert!(t.is_strongly_connected(&eta));
    }

    #[test]
    fn disjoint_cycles_are_not_strongly_connected() {
        // root with two children, each a self-cycle to an inner node
        let t = tree(
            &[&[], &[0], &[1], &[0, 0], &[1, 0]],
            &[(&[0, 0], &[0]), (&[1, 0], &[1])],
        );
        let eta: BTreeSet<_> = [vec![0, 0], vec![1, 0]].into_iter().collect();
        assert!(!t.is_strongly_connected(&eta));
        let comps = t.maximal_components(&t.buds().into_iter().collect());
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn interleaved_cycles_form_one_component() {
        // trunk: e -> 0 -> 00 ; leaves 000 and 001 under a branch at 00
        // bud 000 -> companion root, bud 001 -> companion 0
        let t = tree(
            &[&[], &[0], &[0, 0], &[0, 0, 0], &[0, 0, 1]],
            &[(&[0, 0, 0], &[]), (&[0, 0, 1], &[0])],
        );
        let all: BTreeSet<_> = t.buds().into_iter().collect();
        assert!(t.is_strongly_connected(&all));
        let comps = t.maximal_components(&all);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0], all);
    }

    #[test]
    fn unfold_keeps_normal_form_inputs() {
        let t = tree(&[&[], &[0]], &[(&[0], &[])]);
        let u = unfold_cnf(&t, 1000).unwrap();
        assert_eq!(u.tree, t);
    }

    #[test]
    fn unfold_resolves_sibling_back_edge() {
        // root has children 0 and 1; node 1 is a bud pointing at node 0,
        // which is an inner node with leaf child 00
        let t = tree(&[&[], &[0], &[0, 0], &[1]], &[(&[1], &[0])]);
        assert!(!t.is_cycle_normal());
        let u = unfold_cnf(&t, 1000).unwrap();
        assert!(u.tree.is_cycle_normal());
        // the bud's subtree was replaced by a copy of node 0's subtree
        assert_eq!(u.origin[&vec![1usize]], vec![0usize]);
        assert_eq!(u.origin[&vec![1usize, 0]], vec![0usize, 0]);
    }
}
