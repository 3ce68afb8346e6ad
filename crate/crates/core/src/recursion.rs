//! Leaf-to-root evaluation of θ on a rooted plumbing tree.
//!
//! For a root ρ, every vertex `v` gets a state `(α_v, s_v, β_v)` computed
//! from its children:
//!
//! ```text
//! α_v = 1 / (a_v - Σ_c α_c)
//! s_v = (a_v - 2) - Σ_c β_c
//! β_v = -α_v s_v
//! ```
//!
//! and `θ = (N - 2) - Σ_v α_v s_v²`, independently of ρ. Here `α_v` is
//! `-(Q_v⁻¹)_vv` and `β_v` is `(Q_v⁻¹ z_v)_v` for the subtree hanging
//! from `v`, so a negative-definite form is exactly one where every
//! denominator `a_v - Σ α_c` is positive.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::lattice::solve;
use crate::matrix::RationalVector;

/// Orientation of a tree away from a chosen root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    topo_order: Vec<usize>,
}

impl RootedTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children in declaration order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Every child precedes its parent.
    pub fn topo_order(&self) -> &[usize] {
        &self.topo_order
    }

    /// Vertices of the subtree rooted at `v`, `v` first.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        out
    }
}

/// Per-vertex quantities of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeState {
    pub alpha: BigRational,
    pub s: BigRational,
    pub beta: BigRational,
}

impl NodeState {
    /// `α s²`, the vertex's share of `-K²`.
    pub fn contribution(&self) -> BigRational {
        &self.alpha * &self.s * &self.s
    }
}

pub fn root_tree(g: &PlumbingGraph, rho: &str) -> Result<RootedTree> {
    Ok(root_at(g, g.index_of(rho)?))
}

pub fn root_at(g: &PlumbingGraph, root: usize) -> RootedTree {
    let n = g.len();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut preorder = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut stack = vec![root];
    visited[root] = true;
    while let Some(v) = stack.pop() {
        preorder.push(v);
        for &w in g.neighbors(v) {
            if !visited[w] {
                visited[w] = true;
                parent[w] = Some(v);
                children[v].push(w);
            }
        }
        stack.extend(children[v].iter().rev());
    }
    preorder.reverse();
    RootedTree {
        root,
        parent,
        children,
        topo_order: preorder,
    }
}

/// Run the recursion; the result is indexed by vertex.
pub fn recursion_pass(g: &PlumbingGraph, rt: &RootedTree) -> Result<Vec<NodeState>> {
    let n = g.len();
    let mut states: Vec<Option<NodeState>> = vec![None; n];
    for &v in rt.topo_order() {
        let a = BigRational::from(g.a(v));
        let mut denom = a.clone();
        let mut s = BigRational::from(g.a(v) - 2);
        for &c in rt.children(v) {
            let child = states[c].as_ref().expect("children precede parents");
            denom -= &child.alpha;
            s -= &child.beta;
        }
        if !denom.is_positive() {
            return Err(Error::DefinitenessFailure {
                vertex: g.id(v).to_string(),
                denominator: denom,
            });
        }
        let alpha = denom.recip();
        let beta = -(&alpha * &s);
        states[v] = Some(NodeState { alpha, s, beta });
    }
    Ok(states.into_iter().map(|s| s.expect("every vertex visited")).collect())
}

/// `(N - 2) - Σ α_v s_v²` for the given root.
pub fn theta_tree(g: &PlumbingGraph, rho: &str) -> Result<BigRational> {
    theta_at(g, g.index_of(rho)?)
}

pub fn theta_at(g: &PlumbingGraph, root: usize) -> Result<BigRational> {
    let states = recursion_pass(g, &root_at(g, root))?;
    let total: BigRational = states.iter().map(NodeState::contribution).sum();
    Ok(BigRational::from(BigInt::from(g.len() as i64 - 2)) - total)
}

/// θ rooted at the first declared vertex.
pub fn theta(g: &PlumbingGraph) -> Result<BigRational> {
    theta_at(g, 0)
}

/// θ for every choice of root, in declaration order.
pub fn theta_all_roots(g: &PlumbingGraph) -> Result<Vec<BigRational>> {
    (0..g.len()).map(|v| theta_at(g, v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContributionTable {
    pub root: String,
    /// `(vertex id, α_v s_v²)` in declaration order.
    pub rows: Vec<(String, BigRational)>,
    pub total: BigRational,
}

pub fn contribution_table(g: &PlumbingGraph, rho: &str) -> Result<ContributionTable> {
    let rt = root_tree(g, rho)?;
    let states = recursion_pass(g, &rt)?;
    let rows: Vec<(String, BigRational)> = states
        .iter()
        .enumerate()
        .map(|(v, st)| (g.id(v).to_string(), st.contribution()))
        .collect();
    let total = rows.iter().map(|(_, x)| x).sum();
    Ok(ContributionTable {
        root: rho.to_string(),
        rows,
        total,
    })
}

/// Exact data of one rooted subtree computed from its own intersection
/// matrix: `-(Q_v⁻¹)_vv`, `(Q_v⁻¹ z_v)_v` and `z_vᵀ Q_v⁻¹ z_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreeOracle {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub quadratic: BigRational,
}

pub fn subtree_oracle(g: &PlumbingGraph, rt: &RootedTree, v: usize) -> Result<SubtreeOracle> {
    let idx = rt.subtree(v);
    let q = g.intersection_matrix().principal_submatrix(&idx);
    let mut unit: RationalVector = vec![BigRational::zero(); idx.len()];
    unit[0] = BigRational::from_integer(1.into());
    let z: RationalVector = idx.iter().map(|&u| BigRational::from(g.a(u) - 2)).collect();
    let col = solve(&q, &unit)?;
    let x = solve(&q, &z)?;
    let quadratic = z.iter().zip(&x).map(|(a, b)| a * b).sum();
    Ok(SubtreeOracle {
        alpha: -col[0].clone(),
        beta: x[0].clone(),
        quadratic,
    })
}

/// True iff every `α_v` from the recursion equals `-(Q_v⁻¹)_vv` computed
/// on the subtree's own matrix.
pub fn subtree_alpha_check(g: &PlumbingGraph, rt: &RootedTree) -> bool {
    let Ok(states) = recursion_pass(g, rt) else {
        return false;
    };
    (0..g.len()).all(|v| match subtree_oracle(g, rt, v) {
        Ok(o) => o.alpha == states[v].alpha,
        Err(_) => false,
    })
}
