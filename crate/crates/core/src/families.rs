//! Set-family membership oracles and the exhaustive ranged-problem oracle.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Graph, Natural, Subset, WeightFn};

/// Largest universe [`brute_force_ranged`] enumerates.
pub const ENUMERATION_MAX_N: usize = 22;

/// Tag naming a family without its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    AllSubsets,
    VertexCover,
    DominatingSet,
    HamiltonianCycle,
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subsets" | "all-subsets" => Ok(FamilyKind::AllSubsets),
            "vc" | "vertex-cover" => Ok(FamilyKind::VertexCover),
            "ds" | "dominating-set" => Ok(FamilyKind::DominatingSet),
            "ham" | "hamiltonian-cycle" => Ok(FamilyKind::HamiltonianCycle),
            other => Err(Error::InvalidField {
                field: "oracle".into(),
                reason: format!("unknown family {other:?}"),
            }),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::AllSubsets => "all-subsets",
            FamilyKind::VertexCover => "vertex-cover",
            FamilyKind::DominatingSet => "dominating-set",
            FamilyKind::HamiltonianCycle => "hamiltonian-cycle",
        })
    }
}

/// A family `F ⊆ 2^U` given by a polynomial-time membership test.
///
/// For vertex cover and dominating set the universe is the vertex set; for
/// Hamiltonian cycle it is the edge set, indexed in [`Graph::edges`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyOracle {
    AllSubsets { n: usize },
    VertexCover(Graph),
    DominatingSet(Graph),
    HamiltonianCycle(Graph),
}

impl FamilyOracle {
    pub fn new(kind: FamilyKind, n: usize, graph: Option<Graph>) -> Result<Self> {
        match (kind, graph) {
            (FamilyKind::AllSubsets, _) => Ok(FamilyOracle::AllSubsets { n }),
            (FamilyKind::VertexCover, Some(g)) => Ok(FamilyOracle::VertexCover(g)),
            (FamilyKind::DominatingSet, Some(g)) => Ok(FamilyOracle::DominatingSet(g)),
            (FamilyKind::HamiltonianCycle, Some(g)) => Ok(FamilyOracle::HamiltonianCycle(g)),
            (_, None) => Err(Error::MissingField("edges")),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilyOracle::AllSubsets { .. } => FamilyKind::AllSubsets,
            FamilyOracle::VertexCover(_) => FamilyKind::VertexCover,
            FamilyOracle::DominatingSet(_) => FamilyKind::DominatingSet,
            FamilyOracle::HamiltonianCycle(_) => FamilyKind::HamiltonianCycle,
        }
    }

    /// Size of the universe the family lives in.
    pub fn universe_size(&self) -> usize {
        match self {
            FamilyOracle::AllSubsets { n } => *n,
            FamilyOracle::VertexCover(g) | FamilyOracle::DominatingSet(g) => g.vertex_count(),
            FamilyOracle::HamiltonianCycle(g) => g.edges().len(),
        }
    }

    pub fn contains(&self, x: Subset) -> bool {
        match self {
            FamilyOracle::AllSubsets { .. } => true,
            FamilyOracle::VertexCover(g) => is_vertex_cover(g, x),
            FamilyOracle::DominatingSet(g) => is_dominating_set(g, x),
            FamilyOracle::HamiltonianCycle(g) => is_hamiltonian_cycle(g, x),
        }
    }
}

/// Every edge has an endpoint in `x`.
pub fn is_vertex_cover(g: &Graph, x: Subset) -> bool {
    g.edges().iter().all(|&(a, b)| x.contains(a) || x.contains(b))
}

/// Every vertex is in `x` or adjacent to a vertex of `x`.
pub fn is_dominating_set(g: &Graph, x: Subset) -> bool {
    g.closed_neighbourhoods().iter().all(|&nb| nb & x.0 != 0)
}

/// `(V, x)` is a single cycle through every vertex; `x` indexes edges.
///
/// Simple graphs have no cycles on fewer than three vertices.
pub fn is_hamiltonian_cycle(g: &Graph, x: Subset) -> bool {
    let v = g.vertex_count();
    if v < 3 || x.len() != v {
        return false;
    }
    let mut degree = vec![0usize; v];
    let mut uf = UnionFind::new(v);
    for e in x.elements() {
        let Some(&(a, b)) = g.edges().get(e) else {
            return false;
        };
        degree[a] += 1;
        degree[b] += 1;
        uf.union(a, b);
    }
    degree.iter().all(|&d| d == 2) && (1..v).all(|i| uf.find(i) == uf.find(0))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }
}

/// `{X : X ∈ F ∧ w(X) ∈ [l, u]}` by full enumeration, in ascending mask order.
pub fn brute_force_ranged(oracle: &FamilyOracle, w: &WeightFn, l: &Natural, u: &Natural) -> Result<Vec<Subset>> {
    let n = w.len();
    if oracle.universe_size() != n {
        return Err(Error::LengthMismatch {
            field: "weights".into(),
            expected: oracle.universe_size(),
            found: n,
        });
    }
    if n > ENUMERATION_MAX_N {
        return Err(Error::GuardExceeded {
            what: "enumeration universe size",
            limit: ENUMERATION_MAX_N as u64,
            actual: n as u64,
        });
    }
    let mut out = Vec::new();
    let mut sum = Natural::default();
    let mut mask = 0u64;
    let mut visit = |mask: u64, sum: &Natural| {
        if l <= sum && sum <= u && oracle.contains(Subset(mask)) {
            out.push(Subset(mask));
        }
    };
    visit(0, &sum);
    for i in 1u64..1 << n {
        let e = i.trailing_zeros() as usize;
        mask ^= 1 << e;
        if mask >> e & 1 == 1 {
            sum += w.get(e);
        } else {
            sum -= w.get(e);
        }
        visit(mask, &sum);
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn s(elements: &[usize]) -> Subset {
        Subset::from_elements(elements.iter().copied())
    }

    fn nat(x: u64) -> Natural {
        Natural::from(x)
    }

    #[test]
    fn vertex_cover_examples() {
        assert!(is_vertex_cover(&triangle(), s(&[0, 1])));
        assert!(!is_vertex_cover(&triangle(), s(&[0])));
        assert!(is_vertex_cover(&Graph::new(4, []).unwrap(), Subset::EMPTY));
    }

    #[test]
    fn dominating_set_examples() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_dominating_set(&star, s(&[0])));
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!is_dominating_set(&path, s(&[0])));
        assert!(is_dominating_set(&path, Subset::full(3)));
    }

    #[test]
    fn hamiltonian_cycle_examples() {
        assert!(is_hamiltonian_cycle(&triangle(), Subset::full(3)));
        // C4 = 0-1-2-3-0 plus chord (0,2) at index 4.
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(is_hamiltonian_cycle(&c4, s(&[0, 1, 2, 3])));
        assert!(!is_hamiltonian_cycle(&c4, s(&[0, 1, 4, 2])));
        // K4 edges: (0,1),(0,2),(0,3),(1,2),(1,3),(2,3); a perfect matching has degree 1.
        let k4 = Graph::complete(4);
        assert!(!is_hamiltonian_cycle(&k4, s(&[0, 5])));
        // Two disjoint triangles: every degree is 2 but the cycle is not connected.
        let two = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_hamiltonian_cycle(&two, Subset::full(6)));
    }

    #[test]
    fn ranged_all_subsets() {
        let oracle = FamilyOracle::AllSubsets { n: 3 };
        let w = WeightFn::from_u64s(&[5, 9, 14]);
        // Sums by mask: 0,5,9,14,14,19,23,28.
        let got = brute_force_ranged(&oracle, &w, &nat(2), &nat(20)).unwrap();
        assert_eq!(got, vec![s(&[0]), s(&[1]), s(&[0, 1]), s(&[2]), s(&[0, 2])]);
    }

    #[test]
    fn ranged_vertex_cover() {
        let oracle = FamilyOracle::VertexCover(triangle());
        let got = brute_force_ranged(&oracle, &WeightFn::from_u64s(&[1, 1, 1]), &nat(0), &nat(2)).unwrap();
        assert_eq!(got, vec![s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
    }

    #[test]
    fn full_range_returns_the_family() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let oracle = FamilyOracle::VertexCover(g);
        let w = WeightFn::from_u64s(&[4, 7, 1, 9]);
        let full = brute_force_ranged(&oracle, &w, &nat(0), &nat(4 * 9)).unwrap();
        let family: Vec<Subset> = (0..16).map(Subset).filter(|&x| oracle.contains(x)).collect();
        assert_eq!(full, family);
    }

    #[test]
    fn guard_and_mismatch() {
        let big = FamilyOracle::AllSubsets { n: 23 };
        let w = WeightFn::from_u64s(&[1; 23]);
        assert!(matches!(brute_force_ranged(&big, &w, &nat(0), &nat(1)), Err(Error::GuardExceeded { .. })));
        let oracle = FamilyOracle::VertexCover(triangle());
        assert!(brute_force_ranged(&oracle, &WeightFn::from_u64s(&[1]), &nat(0), &nat(1)).is_err());
    }

    #[test]
    fn kinds_parse() {
        for (name, kind) in [("subsets", FamilyKind::AllSubsets), ("vc", FamilyKind::VertexCover), ("ds", FamilyKind::DominatingSet), ("ham", FamilyKind::HamiltonianCycle)] {
            assert_eq!(name.parse::<FamilyKind>().unwrap(), kind);
            assert_eq!(kind.to_string().parse::<FamilyKind>().unwrap(), kind);
        }
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=8).prop_flat_map(|v| {
            let all: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
            let k = all.len();
            (Just(v), Just(all), prop::collection::vec(any::<bool>(), k))
        })
        .prop_map(|(v, all, keep)| Graph::new(v, all.into_iter().zip(keep).filter(|p| p.1).map(|p| p.0)).unwrap())
    }

    proptest! {
        #[test]
        fn monotone_families(g in arb_graph(), x in any::<u64>(), extra in 0usize..8) {
            let v = g.vertex_count();
            let x = Subset(x & Subset::full(v).0);
            let bigger = Subset(x.0 | 1 << (extra % v));
            if is_vertex_cover(&g, x) { prop_assert!(is_vertex_cover(&g, bigger)); }
            if is_dominating_set(&g, x) { prop_assert!(is_dominating_set(&g, bigger)); }
        }

        #[test]
        fn point_ranges_are_exact_filters(w in prop::collection::vec(0u64..20, 0..=8), pick in any::<u64>()) {
            let n = w.len();
            let oracle = FamilyOracle::AllSubsets { n };
            let wf = WeightFn::from_u64s(&w);
            let x = Subset(pick & Subset::full(n).0);
            let target = wf.eval(x);
            let got = brute_force_ranged(&oracle, &wf, &target, &target).unwrap();
            let expected: Vec<Subset> = (0..1u64 << n).map(Subset).filter(|&y| wf.eval(y) == target).collect();
            prop_assert!(got.contains(&x));
            prop_assert_eq!(got, expected);
        }
    }
}
