//! Cross-module property tests: randomized structural invariants driven by
//! proptest, plus the bound-consistency checks that tie schemes, duality and
//! capacity together.

use std::sync::Arc;

use proptest::prelude::*;

use sumnet::algebra::Alphabet;
use sumnet::capacity;
use sumnet::catalog;
use sumnet::codec::{self, LinearCode, Rate};
use sumnet::duality::dual_code;
use sumnet::netgraph::{Edge, SumNetwork};
use sumnet::oracles::min_cut_brute;
use sumnet::schemes::{
    scheme_multicast, scheme_one_terminal, scheme_three_terminal, scheme_two_source_halfmincut,
    scheme_two_terminal, FieldPolicy,
};
use sumnet::FMatrix;

/// A random DAG with one source and one terminal; edges only go from lower
/// to higher node index, so acyclicity holds by construction.
fn dag_strategy(max_nodes: usize) -> impl Strategy<Value = SumNetwork> {
    (3..=max_nodes, any::<u64>()).prop_map(|(n, bits)| {
        let nodes: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
        let mut edges = Vec::new();
        let mut b = bits;
        for i in 0..n {
            for j in (i + 1)..n {
                if b & 1 == 1 {
                    edges.push(Edge {
                        id: format!("n{i}-n{j}"),
                        tail: nodes[i].clone(),
                        head: nodes[j].clone(),
                    });
                }
                b = b.rotate_right(1) ^ (i as u64).wrapping_mul(0x9E37_79B9);
            }
        }
        SumNetwork {
            name: "prop-dag".into(),
            nodes: nodes.clone(),
            edges,
            sources: vec![nodes[0].clone()],
            terminals: vec![nodes[n - 1].clone()],
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn min_cut_symmetric_under_reversal(net in dag_strategy(12)) {
        let s = net.sources[0].clone();
        let t = net.terminals[0].clone();
        let forward = net.min_cut(&s, &t).unwrap();
        let backward = net.reverse_network().min_cut(&t, &s).unwrap();
        prop_assert_eq!(forward, backward);
        prop_assert_eq!(
            net.min_cut_bound().unwrap(),
            net.reverse_network().min_cut_bound().unwrap()
        );
    }

    #[test]
    fn min_cut_matches_subset_oracle(net in dag_strategy(7)) {
        prop_assume!(net.edges.len() <= 10);
        let s = net.sources[0].clone();
        let t = net.terminals[0].clone();
        let mc = net.min_cut(&s, &t).unwrap();
        let brute = min_cut_brute(&net, &s, &t, 4);
        if mc <= 4 {
            prop_assert_eq!(brute, Some(mc));
        } else {
            prop_assert_eq!(brute, None);
        }
    }

    #[test]
    fn verifiers_agree_on_random_codes(
        entries in proptest::collection::vec(0u64..3, 40),
        field_pick in 0usize..3,
        kl_pick in 0usize..4,
    ) {
        let net = catalog::s3();
        let field = match field_pick {
            0 => Alphabet::field(2, 1).unwrap(),
            1 => Alphabet::field(3, 1).unwrap(),
            _ => Alphabet::field(2, 2).unwrap(),
        };
        let (k, l) = [(1, 1), (1, 2), (2, 1), (2, 2)][kl_pick];
        let q = field.order() as u64;
        let mut feed = entries.iter().cycle();
        let mut next = || *feed.next().unwrap() % q;
        let mut mat = |rows: usize, cols: usize| {
            let data: Vec<Vec<u64>> =
                (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
            FMatrix::from_rows(field.clone(), &data).unwrap()
        };
        let mut code = LinearCode::new(field.clone(), k, l);
        for e in &net.edges {
            if net.sources.contains(&e.tail) {
                code.set_injection(&e.tail, &e.id, mat(k, l)).unwrap();
            }
            for out in net.out_edges_of(&e.head) {
                code.set_transition(&e.id, &out.id, mat(l, l)).unwrap();
            }
        }
        for t in &net.terminals {
            for e in net.in_edges_of(t) {
                code.set_decoding(t, &e.id, mat(l, k)).unwrap();
            }
        }
        let linear = codec::verify_linear(&net, &code).unwrap();
        let table = codec::verify_table(&net, &codec::linearize(&net, &code).unwrap()).unwrap();
        prop_assert_eq!(linear, table);
    }
}

/// Case-matched scheme constructions sit between the reported bounds on
/// every catalog network.
#[test]
fn scheme_rates_sit_between_bounds() {
    let gf2 = Alphabet::field(2, 1).unwrap();
    let best_code = |net: &SumNetwork, field: &Arc<Alphabet>| -> LinearCode {
        let eta = net.min_cut_bound().unwrap();
        let (m, n) = (net.source_count(), net.terminal_count());
        if m == 1 {
            scheme_multicast(net, &net.sources[0].clone(), eta, field, 1).unwrap()
        } else if n == 1 {
            scheme_one_terminal(net, field, FieldPolicy::Escalate, 1).unwrap()
        } else if n == 2 && eta == 1 {
            // With exactly two terminals the two-terminal code is a full
            // rate-1 solution.
            scheme_two_terminal(
                net,
                &net.terminals[0].clone(),
                &net.terminals[1].clone(),
                field,
                1,
            )
            .unwrap()
        } else if m == 2 || n == 2 {
            scheme_two_source_halfmincut(net, field, FieldPolicy::Escalate, 1).unwrap()
        } else {
            scheme_three_terminal(net, field, FieldPolicy::Escalate, 1).unwrap().0
        }
    };
    for entry in catalog::entries() {
        let net = &entry.network;
        let code = best_code(net, &gf2);
        assert!(codec::verify_linear(net, &code).unwrap(), "{}", entry.name);
        let (lower, _) = capacity::lower_bound(net).unwrap();
        let upper = capacity::upper_bound(net).unwrap();
        assert!(
            lower <= code.rate() && code.rate() <= upper,
            "{}: lower {} rate {} upper {}",
            entry.name,
            lower,
            code.rate(),
            upper
        );
    }
}

/// The three-terminal scheme succeeds whenever all nine source-terminal
/// pairs are connected.
#[test]
fn three_terminal_succeeds_on_connected_instances() {
    let gf2 = Alphabet::field(2, 1).unwrap();
    let mut nets: Vec<SumNetwork> = vec![catalog::s3(), catalog::s3_prime(), catalog::bipartite(3, 3)];
    nets.extend((0..10).map(|i| catalog::random_connected(3, 3, 7000 + i)));
    for net in &nets {
        assert!(net.min_cut_bound().unwrap() >= 1);
        let (code, plan) =
            scheme_three_terminal(net, &gf2, FieldPolicy::Escalate, 19).unwrap();
        assert_eq!(code.rate(), Rate::new(2, 3), "{}", net.name);
        assert!(codec::verify_linear(net, &code).unwrap(), "{}", net.name);
        plan.check_reconstruction().unwrap();
    }
}

/// Duality keeps (k,l) and verification on catalog-wide scheme outputs, and
/// the transfer check confirms each rate on the reverse network.
#[test]
fn duality_confirms_rates_across_catalog() {
    let gf2 = Alphabet::field(2, 1).unwrap();
    for entry in catalog::entries() {
        let net = &entry.network;
        let eta = net.min_cut_bound().unwrap();
        let code = if net.source_count() == 1 {
            scheme_multicast(net, &net.sources[0].clone(), eta, &gf2, 2).unwrap()
        } else if net.terminal_count() == 1 {
            scheme_one_terminal(net, &gf2, FieldPolicy::Escalate, 2).unwrap()
        } else if net.source_count().min(net.terminal_count()) == 2 {
            scheme_two_source_halfmincut(net, &gf2, FieldPolicy::Escalate, 2).unwrap()
        } else {
            scheme_three_terminal(net, &gf2, FieldPolicy::Escalate, 2).unwrap().0
        };
        let report = sumnet::duality::linear_capacity_transfer_check(net, &[code]).unwrap();
        assert!(report.entries.iter().all(|e| e.confirmed), "{}", entry.name);
    }
}

/// Structural isomorphism ignores node names but not structure; the exact
/// catalog override must fire for relabeled copies only.
#[test]
fn capacity_override_requires_isomorphism() {
    let mut almost_s3 = catalog::s3();
    almost_s3.name = "tweaked".into();
    // Removing one edge breaks the isomorphism (and connectivity).
    almost_s3.edges.retain(|e| e.id != "s1-t2");
    let report = capacity::report(&almost_s3).unwrap();
    assert_ne!(report.exact, Some(Rate::new(2, 3)));
}

/// Dualizing a verified code twice re-verifies on the original network.
#[test]
fn dual_involution_on_random_instances() {
    let gf2 = Alphabet::field(2, 1).unwrap();
    let mut verified = 0;
    for seed in 0..20 {
        let net = catalog::random_connected(2, 2, 9000 + seed);
        let Ok(code) = scheme_two_source_halfmincut(&net, &gf2, FieldPolicy::Escalate, seed)
        else {
            continue;
        };
        let dual = dual_code(&net, &code).unwrap();
        let back = dual_code(&net.reverse_network(), &dual).unwrap();
        assert!(codec::verify_linear(&net, &back).unwrap());
        verified += 1;
    }
    assert!(verified >= 15, "only {verified} instances verified");
}


/// Randomized cross-validation of the pruned table search. On every random
/// network whose unreduced function space fits the naive oracle, the pruned
/// search status must match the oracle's exactly; on every network, a linear
/// witness contradicts an exhausted-none claim (budget-exceeded makes no
/// claim and is exempt).
#[test]
fn fuzz_pruned_search_against_naive_oracle() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use sumnet::oracles::naive_search_scalar;
    use sumnet::oracles::NaiveStatus;
    use sumnet::search::{search_linear, search_table, SearchStatus};

    fn random_sum_net(rng: &mut StdRng) -> SumNetwork {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=2);
        let sources: Vec<String> = (0..m).map(|i| format!("s{i}")).collect();
        let relays: Vec<String> = (0..r).map(|i| format!("r{i}")).collect();
        let terminals: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
        let mut net = SumNetwork {
            name: "fuzz".into(),
            nodes: sources.iter().chain(&relays).chain(&terminals).cloned().collect(),
            edges: vec![],
            sources: sources.clone(),
            terminals: terminals.clone(),
        };
        let add = |net: &mut SumNetwork, a: &str, b: &str| {
            net.edges.push(Edge { id: format!("{a}-{b}"), tail: a.into(), head: b.into() });
        };
        for s in &sources {
            for rl in &relays {
                if rng.gen_bool(0.5) {
                    add(&mut net, s, rl);
                }
            }
            for t in &terminals {
                if rng.gen_bool(0.35) {
                    add(&mut net, s, t);
                }
            }
        }
        for rl in &relays {
            for t in &terminals {
                if rng.gen_bool(0.5) {
                    add(&mut net, rl, t);
                }
            }
        }
        net
    }

    let z2 = Alphabet::group(&[2]).unwrap();
    let z3 = Alphabet::group(&[3]).unwrap();
    let gf2 = Alphabet::field(2, 1).unwrap();
    let gf3 = Alphabet::field(3, 1).unwrap();
    let mut rng = StdRng::seed_from_u64(0xfade);
    let mut tested = 0;
    let mut naive_comparable = 0;
    while tested < 300 {
        let net = random_sum_net(&mut rng);
        if !net.is_valid() {
            continue;
        }
        tested += 1;
        for (grp, fld) in [(&z2, &gf2), (&z3, &gf3)] {
            let pruned = search_table(&net, grp, 1, 1, 1 << 22, 2).unwrap();
            // The oracle is only run where the unreduced space is small.
            let q = grp.order() as u128;
            let mut space: u128 = 1;
            for e in &net.edges {
                let dom = if net.sources.contains(&e.tail) {
                    q
                } else {
                    q.pow(net.in_edges_of(&e.tail).len() as u32)
                };
                space = space.saturating_mul(q.saturating_pow(dom as u32));
            }
            if space <= 1 << 22 {
                naive_comparable += 1;
                let (naive, _) = naive_search_scalar(&net, grp, u64::MAX);
                let expect = match naive {
                    NaiveStatus::Found => SearchStatus::Found,
                    NaiveStatus::ExhaustedNone => SearchStatus::ExhaustedNone,
                    NaiveStatus::BudgetExceeded => unreachable!(),
                };
                assert_eq!(pruned.status, expect, "net {:?} over {}", net, grp.spec());
            }
            let linear = search_linear(&net, fld, 1, 1, 1 << 22, 2).unwrap();
            if linear.status == SearchStatus::Found
                && pruned.status != SearchStatus::BudgetExceeded
            {
                assert_eq!(pruned.status, SearchStatus::Found, "net {:?}", net);
            }
            if pruned.status == SearchStatus::ExhaustedNone {
                assert_ne!(linear.status, SearchStatus::Found, "net {:?}", net);
            }
        }
    }
    assert!(naive_comparable >= 200, "only {naive_comparable} comparable cases");
}

/// Cross-validates the normalized linear search against a brute enumeration
/// of every unnormalized (1,1) coefficient assignment with decoders derived
/// by linear solve. The two must agree on existence wherever the brute
/// space is enumerable.
#[test]
fn fuzz_linear_search_against_unnormalized_enumeration() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use sumnet::search::{search_linear, SearchStatus};

    // Slots in the unnormalized space: one scalar per source edge and one
    // per consecutive edge pair.
    fn slot_count(net: &SumNetwork) -> usize {
        let mut count = 0;
        for e in &net.edges {
            if net.sources.contains(&e.tail) {
                count += 1;
            }
            count += net.out_edges_of(&e.head).len();
        }
        count
    }

    fn brute_linear_solvable(net: &SumNetwork, field: &std::sync::Arc<Alphabet>) -> bool {
        let q = field.order() as u64;
        let slots = slot_count(net);
        let space = q.pow(slots as u32);
        let identity = FMatrix::identity(field.clone(), 1);
        for index in 0..space {
            let mut digits = Vec::with_capacity(slots);
            let mut rest = index;
            for _ in 0..slots {
                digits.push(rest % q);
                rest /= q;
            }
            let mut feed = digits.into_iter();
            let mut code = LinearCode::new(field.clone(), 1, 1);
            for e in &net.edges {
                if net.sources.contains(&e.tail) {
                    let v = feed.next().unwrap();
                    let m = FMatrix::from_rows(field.clone(), &[vec![v]]).unwrap();
                    code.set_injection(&e.tail, &e.id, m).unwrap();
                }
                for out in net.out_edges_of(&e.head) {
                    let v = feed.next().unwrap();
                    let m = FMatrix::from_rows(field.clone(), &[vec![v]]).unwrap();
                    code.set_transition(&e.id, &out.id, m).unwrap();
                }
            }
            // Decoders exist iff every terminal's stacked system solves.
            let transfer = codec::global_transfer(net, &code).unwrap();
            let decodable = net.terminals.iter().all(|t| {
                let ins = net.in_edges_of(t);
                if ins.is_empty() {
                    return false;
                }
                let mut rows: Option<FMatrix> = None;
                let mut rhs: Option<FMatrix> = None;
                for s in &net.sources {
                    let mut row: Option<FMatrix> = None;
                    for e in &ins {
                        let block = transfer[&(s.clone(), e.id.clone())].clone();
                        row = Some(match row {
                            None => block,
                            Some(r) => r.hstack(&block).unwrap(),
                        });
                    }
                    rows = Some(match rows {
                        None => row.unwrap(),
                        Some(r) => r.vstack(&row.unwrap()).unwrap(),
                    });
                    rhs = Some(match rhs {
                        None => identity.clone(),
                        Some(r) => r.vstack(&identity).unwrap(),
                    });
                }
                rows.unwrap().solve_right(&rhs.unwrap()).unwrap().is_some()
            });
            if decodable {
                return true;
            }
        }
        false
    }

    let gf2 = Alphabet::field(2, 1).unwrap();
    let gf3 = Alphabet::field(3, 1).unwrap();
    let mut rng = StdRng::seed_from_u64(0xbead);
    let mut compared = 0;
    let mut attempts = 0;
    while compared < 60 && attempts < 4000 {
        attempts += 1;
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let net = catalog::random_connected(m, n, 20_000 + attempts);
        let slots = slot_count(&net);
        for field in [&gf2, &gf3] {
            let q = field.order() as u64;
            if (q as u128).pow(slots as u32) > 1 << 16 {
                continue;
            }
            compared += 1;
            let fast = search_linear(&net, field, 1, 1, 1 << 24, 2).unwrap();
            let brute = brute_linear_solvable(&net, field);
            match fast.status {
                SearchStatus::Found => assert!(brute, "{} over {}", net.name, field.spec()),
                SearchStatus::ExhaustedNone => {
                    assert!(!brute, "{} over {}", net.name, field.spec())
                }
                SearchStatus::BudgetExceeded => unreachable!("space fits the budget"),
            }
        }
    }
    assert!(compared >= 60, "only {compared} comparable instances");
}
