//! Built-in sum-networks: the two three-source/three-terminal networks whose
//! capacity is pinned exactly, classic multicast fixtures, and parametric
//! generators for tests. All constructors return validated networks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::netgraph::SumNetwork;

/// How a catalog topology was obtained: `Textual` entries are reconstructed
/// from a prose description of the network, `Derived` entries are ordinary
/// constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    Textual,
    Derived,
}

/// A known fact about a catalog network together with the reason it holds.
#[derive(Debug, Clone)]
pub struct Fact {
    pub statement: String,
    pub provenance: String,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub network: SumNetwork,
    pub facts: Vec<Fact>,
    pub confidence: Confidence,
}

/// The three-source/three-terminal network with min-cut 1 between every
/// source-terminal pair that nevertheless has no rate-1 solution. The two
/// middle edges (u1,v1) and (u2,v2) are the only routes mixing s3 with s1
/// and s2 respectively.
pub fn s3() -> SumNetwork {
    SumNetwork::new(
        "s3",
        &["s1", "s2", "s3", "u1", "u2", "v1", "v2", "t1", "t2", "t3"],
        &[
            ("s1-u1", "s1", "u1"),
            ("s1-t2", "s1", "t2"),
            ("s2-u2", "s2", "u2"),
            ("s2-t1", "s2", "t1"),
            ("s3-u1", "s3", "u1"),
            ("s3-u2", "s3", "u2"),
            ("u1-v1", "u1", "v1"),
            ("u2-v2", "u2", "v2"),
            ("v1-t1", "v1", "t1"),
            ("v1-t3", "v1", "t3"),
            ("v2-t2", "v2", "t2"),
            ("v2-t3", "v2", "t3"),
        ],
        &["s1", "s2", "s3"],
        &["t1", "t2", "t3"],
    )
}

/// The maximal extension of [`s3`] with the same capacity: a direct edge
/// s1 -> t1, plus the edge (s2,t1) subdivided at u3 with an extra edge
/// s1 -> u3. Built by graph surgery on [`s3`].
pub fn s3_prime() -> SumNetwork {
    let mut net = s3()
        .subdivide_edge("s2-t1", "u3")
        .expect("s2-t1 exists in s3")
        .add_edge("s1", "u3")
        .expect("acyclic addition")
        .add_edge("s1", "t1")
        .expect("acyclic addition");
    net.name = "s3-prime".to_string();
    net
}

/// The classic one-source two-terminal multicast butterfly with min-cut 2.
pub fn butterfly() -> SumNetwork {
    SumNetwork::new(
        "butterfly",
        &["s", "a", "b", "c", "d", "t1", "t2"],
        &[
            ("s-a", "s", "a"),
            ("s-b", "s", "b"),
            ("a-c", "a", "c"),
            ("b-c", "b", "c"),
            ("a-t1", "a", "t1"),
            ("b-t2", "b", "t2"),
            ("c-d", "c", "d"),
            ("d-t1", "d", "t1"),
            ("d-t2", "d", "t2"),
        ],
        &["s"],
        &["t1", "t2"],
    )
}

/// The reverse of [`butterfly`]: two sources, one terminal, min-cut 2.
pub fn reverse_butterfly() -> SumNetwork {
    let mut net = butterfly().reverse_network();
    net.name = "reverse-butterfly".to_string();
    net
}

/// Complete bipartite sum-network: every source has a direct edge to every
/// terminal, so summing the in-edges solves it at rate 1.
pub fn bipartite(m: usize, n: usize) -> SumNetwork {
    let sources: Vec<String> = (1..=m).map(|i| format!("s{i}")).collect();
    let terminals: Vec<String> = (1..=n).map(|j| format!("t{j}")).collect();
    let mut net = SumNetwork {
        name: format!("bipartite-{m}x{n}"),
        nodes: sources.iter().chain(&terminals).cloned().collect(),
        edges: Vec::new(),
        sources: sources.clone(),
        terminals: terminals.clone(),
    };
    for s in &sources {
        for t in &terminals {
            net = net.add_edge(s, t).expect("bipartite edges are acyclic");
        }
    }
    net
}

/// One source, one relay, one terminal.
pub fn chain() -> SumNetwork {
    SumNetwork::new(
        "chain",
        &["s", "a", "t"],
        &[("s-a", "s", "a"), ("a-t", "a", "t")],
        &["s"],
        &["t"],
    )
}

/// Two sources merging at a single relay that feeds two terminals; every
/// source-terminal pair has min-cut 1.
pub fn diamond() -> SumNetwork {
    SumNetwork::new(
        "diamond",
        &["s1", "s2", "a", "t1", "t2"],
        &[
            ("s1-a", "s1", "a"),
            ("s2-a", "s2", "a"),
            ("a-t1", "a", "t1"),
            ("a-t2", "a", "t2"),
        ],
        &["s1", "s2"],
        &["t1", "t2"],
    )
}

/// Two sources, two disjoint relays, two terminals: min-cut 2 for every
/// source-terminal pair.
pub fn doubled_diamond() -> SumNetwork {
    SumNetwork::new(
        "doubled-diamond",
        &["s1", "s2", "a", "b", "t1", "t2"],
        &[
            ("s1-a", "s1", "a"),
            ("s1-b", "s1", "b"),
            ("s2-a", "s2", "a"),
            ("s2-b", "s2", "b"),
            ("a-t1", "a", "t1"),
            ("a-t2", "a", "t2"),
            ("b-t1", "b", "t1"),
            ("b-t2", "b", "t2"),
        ],
        &["s1", "s2"],
        &["t1", "t2"],
    )
}

/// Seeded random sum-network with `m` sources, `n` terminals and a shallow
/// relay layer. Every source-terminal pair is connected: missing paths are
/// patched with direct edges, so `min_cut_bound >= 1` always holds.
pub fn random_connected(m: usize, n: usize, seed: u64) -> SumNetwork {
    assert!(m >= 1 && n >= 1, "need at least one source and one terminal");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ca1ab1e);
    let relays = rng.gen_range(1..=3usize);
    let sources: Vec<String> = (1..=m).map(|i| format!("s{i}")).collect();
    let terminals: Vec<String> = (1..=n).map(|j| format!("t{j}")).collect();
    let relay_nodes: Vec<String> = (1..=relays).map(|r| format!("r{r}")).collect();
    let mut net = SumNetwork {
        name: format!("random-{m}x{n}-{seed}"),
        nodes: sources.iter().chain(&relay_nodes).chain(&terminals).cloned().collect(),
        edges: Vec::new(),
        sources: sources.clone(),
        terminals: terminals.clone(),
    };
    for s in &sources {
        for r in &relay_nodes {
            if rng.gen_bool(0.5) {
                net = net.add_edge(s, r).expect("layered edges are acyclic");
            }
        }
        for t in &terminals {
            if rng.gen_bool(0.25) {
                net = net.add_edge(s, t).expect("layered edges are acyclic");
            }
        }
    }
    for r in &relay_nodes {
        for t in &terminals {
            if rng.gen_bool(0.5) {
                net = net.add_edge(r, t).expect("layered edges are acyclic");
            }
        }
    }
    for s in &sources {
        for t in &terminals {
            if net.min_cut(s, t).expect("nodes exist") == 0 {
                net = net.add_edge(s, t).expect("layered edges are acyclic");
            }
        }
    }
    net
}

/// The named catalog entries served by the CLI.
pub fn entries() -> Vec<CatalogEntry> {
    let fact = |statement: &str, provenance: &str| Fact {
        statement: statement.to_string(),
        provenance: provenance.to_string(),
    };
    vec![
        CatalogEntry {
            name: "s3".into(),
            network: s3(),
            facts: vec![
                fact(
                    "capacity and linear coding capacity are exactly 2/3",
                    "the cut {u1-v1, u2-v2} lets t3 reconstruct all three source blocks, so \
                     2l symbols must carry 3k, i.e. k/l <= 2/3; the three-slot two-terminal \
                     schedule achieves 2/3",
                ),
                fact(
                    "no rate-1 solution exists over any alphabet of order <= 8, linear or not",
                    "certified here by exhaustive search with sound pruning (see the search \
                     module); the min-cut bound 1 is therefore not achievable",
                ),
            ],
            confidence: Confidence::Textual,
        },
        CatalogEntry {
            name: "s3-prime".into(),
            network: s3_prime(),
            facts: vec![fact(
                "capacity and linear coding capacity are exactly 2/3",
                "adding s1-t1 and the subdivided s2-u3-t1 path cannot lower the capacity of \
                 s3, and the same two-edge cut-counting argument bounds it above by 2/3",
            )],
            confidence: Confidence::Textual,
        },
        CatalogEntry {
            name: "butterfly".into(),
            network: butterfly(),
            facts: vec![fact(
                "capacity 2 = min-cut (single-source multicast)",
                "two edge-disjoint paths reach each terminal; the classic rate-2 multicast \
                 code over GF(2) achieves the bound",
            )],
            confidence: Confidence::Derived,
        },
        CatalogEntry {
            name: "reverse-butterfly".into(),
            network: reverse_butterfly(),
            facts: vec![fact(
                "capacity 2 = min-cut (one-terminal network)",
                "dualizing the butterfly multicast code yields a rate-2 sum code",
            )],
            confidence: Confidence::Derived,
        },
        CatalogEntry {
            name: "chain".into(),
            network: chain(),
            facts: vec![fact("solvable at rate 1 by forwarding", "single path")],
            confidence: Confidence::Derived,
        },
        CatalogEntry {
            name: "diamond".into(),
            network: diamond(),
            facts: vec![fact(
                "solvable at rate 1",
                "the relay sums its inputs; min-cut 1 with two sources and two terminals",
            )],
            confidence: Confidence::Derived,
        },
        CatalogEntry {
            name: "doubled-diamond".into(),
            network: doubled_diamond(),
            facts: vec![fact(
                "rate 1 achievable by half-min-cut time sharing",
                "per-source min-cut 2; two rate-2 multicasts in two slots, terminals add",
            )],
            confidence: Confidence::Derived,
        },
        CatalogEntry {
            name: "bipartite-3x3".into(),
            network: bipartite(3, 3),
            facts: vec![fact(
                "solvable at rate 1",
                "every terminal sums its three direct in-edges",
            )],
            confidence: Confidence::Derived,
        },
    ]
}

/// Looks up a fixed catalog network by name.
pub fn lookup(name: &str) -> Option<SumNetwork> {
    entries().into_iter().find(|e| e.name == name).map(|e| e.network)
}
