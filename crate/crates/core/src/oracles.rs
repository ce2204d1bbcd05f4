//! Slow, independent reference implementations used to cross-check the main
//! algorithms. Nothing here shares code with the paths it certifies: the cut
//! oracle enumerates edge subsets instead of running max-flow, and the naive
//! code search enumerates every edge-function assignment with no pruning.

use std::collections::VecDeque;

use crate::algebra::{Alphabet, Elem};
use crate::codec::TableCode;
use crate::netgraph::SumNetwork;

/// Smallest `k <= max_size` such that removing some `k`-subset of edges
/// disconnects `t` from `s`, found by direct subset enumeration. `None` when
/// every subset up to `max_size` leaves `t` reachable.
pub fn min_cut_brute(net: &SumNetwork, s: &str, t: &str, max_size: usize) -> Option<usize> {
    let m = net.edges.len();
    let reachable = |removed: &[bool]| -> bool {
        let mut seen: Vec<bool> = net.nodes.iter().map(|n| n == s).collect();
        let idx = |name: &str| net.nodes.iter().position(|n| n == name).unwrap();
        let mut queue = VecDeque::from([idx(s)]);
        while let Some(v) = queue.pop_front() {
            if net.nodes[v] == t {
                return true;
            }
            for (i, e) in net.edges.iter().enumerate() {
                if removed[i] || e.tail != net.nodes[v] {
                    continue;
                }
                let h = idx(&e.head);
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        false
    };

    fn subsets(
        start: usize,
        left: usize,
        removed: &mut Vec<bool>,
        m: usize,
        check: &mut dyn FnMut(&[bool]) -> bool,
    ) -> bool {
        if left == 0 {
            return check(removed);
        }
        for i in start..m {
            removed[i] = true;
            if subsets(i + 1, left - 1, removed, m, check) {
                removed[i] = false;
                return true;
            }
            removed[i] = false;
        }
        false
    }

    for size in 0..=max_size.min(m) {
        let mut removed = vec![false; m];
        let mut disconnects = |removed: &[bool]| !reachable(removed);
        if subsets(0, size, &mut removed, m, &mut disconnects) {
            return Some(size);
        }
    }
    None
}

/// Outcome of the naive scalar-code search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NaiveStatus {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

/// Exhaustively decides whether a (1,1) code over `alphabet` exists, by
/// enumerating every assignment of every edge function (no normalization, no
/// pruning) and deciding per assignment whether every terminal's received
/// view determines the sum. `budget` caps the number of function assignments
/// explored. Returns the status plus a verified witness when one exists.
pub fn naive_search_scalar(
    net: &SumNetwork,
    alphabet: &std::sync::Arc<Alphabet>,
    budget: u64,
) -> (NaiveStatus, Option<TableCode>) {
    assert!(net.is_valid(), "naive search requires a valid network");
    let q = alphabet.order();
    let order = net.topo_order().expect("valid network has a topo order");
    let edge_pos: Vec<usize> = net
        .edges
        .iter()
        .map(|e| order.iter().position(|id| *id == e.id).unwrap())
        .collect();
    let by_pos: Vec<usize> = {
        let mut v = vec![0usize; net.edges.len()];
        for (e, &p) in edge_pos.iter().enumerate() {
            v[p] = e;
        }
        v
    };
    let m = net.sources.len();

    // Per edge: either the index of the source generating its input, or the
    // in-edge indices of its tail (edge-list order).
    let mut src_of: Vec<Option<usize>> = Vec::new();
    let mut in_lists: Vec<Vec<usize>> = Vec::new();
    for e in &net.edges {
        let src = net.sources.iter().position(|s| *s == e.tail);
        src_of.push(src);
        let ins = net
            .edges
            .iter()
            .enumerate()
            .filter(|(_, f)| f.head == e.tail)
            .map(|(i, _)| i)
            .collect();
        in_lists.push(ins);
    }
    let term_in: Vec<Vec<usize>> = net
        .terminals
        .iter()
        .map(|t| {
            net.edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.head == *t)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    // Terminals become checkable at the topo position of their last in-edge.
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); net.edges.len() + 1];
    for (ti, ins) in term_in.iter().enumerate() {
        let last = ins.iter().map(|&e| edge_pos[e]).max();
        match last {
            Some(p) => check_at[p + 1].push(ti),
            // A terminal with no in-edges can never decode; handled below.
            None => check_at[0].push(ti),
        }
    }

    let tuples: Vec<Vec<Elem>> = {
        let count = (q as u64).pow(m as u32);
        (0..count)
            .map(|mut t| {
                (0..m)
                    .map(|_| {
                        let v = (t % q as u64) as Elem;
                        t /= q as u64;
                        v
                    })
                    .collect()
            })
            .collect()
    };
    let sums: Vec<Elem> = tuples
        .iter()
        .map(|tp| tp.iter().fold(0, |acc, &x| alphabet.add(acc, x)))
        .collect();

    struct Ctx<'a> {
        q: usize,
        qpow: Vec<usize>,
        edge_count: usize,
        by_pos: Vec<usize>,
        src_of: Vec<Option<usize>>,
        in_lists: Vec<Vec<usize>>,
        term_in: Vec<Vec<usize>>,
        check_at: Vec<Vec<usize>>,
        tuples: Vec<Vec<Elem>>,
        sums: &'a [Elem],
        budget: u64,
        nodes: u64,
        tables: Vec<Vec<Elem>>,
        vals: Vec<Vec<Elem>>,
        view_scratch: Vec<Vec<Elem>>,
    }

    impl Ctx<'_> {
        fn terminal_consistent(&mut self, ti: usize) -> bool {
            if self.term_in[ti].is_empty() {
                return false;
            }
            let views = self.qpow[self.term_in[ti].len()];
            self.view_scratch[ti][..views].fill(Elem::MAX);
            for tidx in 0..self.tuples.len() {
                let mut view = 0usize;
                for (j, &e) in self.term_in[ti].iter().enumerate() {
                    view += self.vals[e][tidx] as usize * self.qpow[j];
                }
                let want = self.sums[tidx];
                let slot = &mut self.view_scratch[ti][view];
                if *slot == Elem::MAX {
                    *slot = want;
                } else if *slot != want {
                    return false;
                }
            }
            true
        }

        fn descend(&mut self, pos: usize) -> Result<bool, ()> {
            for i in 0..self.check_at[pos].len() {
                let ti = self.check_at[pos][i];
                if !self.terminal_consistent(ti) {
                    return Ok(false);
                }
            }
            if pos == self.edge_count {
                return Ok(true);
            }
            let e = self.by_pos[pos];
            let dom = match self.src_of[e] {
                Some(_) => self.q,
                None => self.qpow[self.in_lists[e].len()],
            };
            let candidates = (self.q as u64).pow(dom as u32);
            // Domain index per tuple is fixed for the whole candidate sweep.
            let dimxs: Vec<usize> = (0..self.tuples.len())
                .map(|tidx| match self.src_of[e] {
                    Some(si) => self.tuples[tidx][si] as usize,
                    None => {
                        let mut ix = 0usize;
                        for (j, &f) in self.in_lists[e].iter().enumerate() {
                            ix += self.vals[f][tidx] as usize * self.qpow[j];
                        }
                        ix
                    }
                })
                .collect();
            for cand in 0..candidates {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(());
                }
                self.tables[e].resize(dom, 0);
                let mut rest = cand;
                for i in 0..dom {
                    self.tables[e][i] = (rest % self.q as u64) as Elem;
                    rest /= self.q as u64;
                }
                for (tidx, &dimx) in dimxs.iter().enumerate() {
                    self.vals[e][tidx] = self.tables[e][dimx];
                }
                if self.descend(pos + 1)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }

    let tuple_count = tuples.len();
    let max_in = term_in.iter().map(|v| v.len()).max().unwrap_or(0);
    let qpow: Vec<usize> = {
        let largest = net
            .edges
            .iter()
            .enumerate()
            .map(|(e, _)| in_lists[e].len())
            .chain([max_in, 1])
            .max()
            .unwrap();
        (0..=largest.max(m)).map(|i| q.pow(i as u32)).collect()
    };
    let view_scratch: Vec<Vec<Elem>> = term_in
        .iter()
        .map(|ins| vec![Elem::MAX; qpow[ins.len()]])
        .collect();
    let mut ctx = Ctx {
        q,
        qpow,
        edge_count: net.edges.len(),
        by_pos,
        src_of,
        in_lists,
        term_in,
        check_at,
        tuples,
        sums: &sums,
        budget,
        nodes: 0,
        tables: vec![Vec::new(); net.edges.len()],
        vals: vec![vec![0; tuple_count]; net.edges.len()],
        view_scratch,
    };

    match ctx.descend(0) {
        Err(()) => (NaiveStatus::BudgetExceeded, None),
        Ok(false) => (NaiveStatus::ExhaustedNone, None),
        Ok(true) => {
            // Assemble the witness: the chosen edge tables plus decoding
            // tables read off the consistent view -> sum maps.
            let mut code = TableCode::new(alphabet.clone(), 1, 1);
            for (e, table) in ctx.tables.iter().enumerate() {
                code.set_edge_table(&net.edges[e].id, table.iter().map(|&v| v as u64).collect());
            }
            for (ti, t) in net.terminals.iter().enumerate() {
                let ins = &ctx.term_in[ti];
                let views = q.pow(ins.len() as u32);
                let mut dec = vec![0u64; views];
                for tidx in 0..ctx.tuples.len() {
                    let mut view = 0usize;
                    for (j, &e) in ins.iter().enumerate() {
                        view += ctx.vals[e][tidx] as usize * q.pow(j as u32);
                    }
                    dec[view] = ctx.sums[tidx] as u64;
                }
                code.set_decoding_table(t, dec);
            }
            (NaiveStatus::Found, Some(code))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Alphabet;
    use crate::catalog;
    use crate::codec::verify_table;

    #[test]
    fn brute_min_cut_on_chain() {
        let net = catalog::chain();
        assert_eq!(min_cut_brute(&net, "s", "t", 4), Some(1));
    }

    #[test]
    fn brute_min_cut_disconnected() {
        let net = SumNetwork::new(
            "disc",
            &["s1", "s2", "t"],
            &[("s1-t", "s1", "t")],
            &["s1", "s2"],
            &["t"],
        );
        assert_eq!(min_cut_brute(&net, "s2", "t", 4), Some(0));
    }

    #[test]
    fn naive_finds_bipartite_solution() {
        let z2 = Alphabet::group(&[2]).unwrap();
        let net = catalog::bipartite(2, 2);
        let (status, witness) = naive_search_scalar(&net, &z2, 1 << 24);
        assert_eq!(status, NaiveStatus::Found);
        let code = witness.unwrap();
        assert!(verify_table(&net, &code).unwrap());
    }

    #[test]
    fn naive_budget_exceeded() {
        let z2 = Alphabet::group(&[2]).unwrap();
        let net = catalog::s3();
        let (status, _) = naive_search_scalar(&net, &z2, 10);
        assert_eq!(status, NaiveStatus::BudgetExceeded);
    }
}
