//! Existence search for (k,l) codes.
//!
//! Three entry points:
//! - [`search_table`]: exhaustive search over general (possibly nonlinear)
//!   codes. For scalar parameters (k = l = 1) it applies two sound
//!   reductions before enumerating, so `ExhaustedNone` is a proof of
//!   non-solvability; for other parameters it enumerates the unreduced space
//!   when that fits the budget and otherwise reports `BudgetExceeded`.
//! - [`search_linear`]: exhaustive enumeration of linear codes. Decoding
//!   matrices are never enumerated; each encoder candidate's decoders are
//!   derived by solving the terminal equations.
//! - [`search_random_linear`]: seeded uniform sampling of linear codes, used
//!   as a constructive subroutine. Never claims non-existence.
//!
//! Sound reductions used by the scalar table search:
//! (a) forwarding normalization: an edge out of a source (when k = l) or out
//!     of an internal node of in-degree 1 is fixed to the identity. Sound
//!     because any solution can be rewritten so the head node recomputes the
//!     original edge function locally; the raw input carries at least as
//!     much information as any function of it.
//! (b) decodability prefilter: when a terminal's inputs are one free merge
//!     value plus raw messages, two merge inputs that agree on the sources
//!     the terminal sees raw and collide under the merge function must have
//!     equal partial sums, or the terminal cannot tell two worlds with
//!     different sums apart. Candidates violating this are never part of a
//!     solution, so enumerating only the survivors is sound.
//! (c) joint check: surviving combinations are verified by full enumeration
//!     of source tuples.
//!
//! Candidates are indexed by a mixed-radix counter over the free slots
//! (slot 0 least significant; within a prefiltered slot the sub-index runs
//! mixed-radix over its independent input slices), so candidate sets are
//! addressed lazily and never materialized. Parallel workers take disjoint
//! contiguous index ranges and the lowest found index wins, so results are
//! independent of the worker count.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Alphabet, Elem, FMatrix};
use crate::codec::{self, Code, LinearCode, TableCode};
use crate::netgraph::SumNetwork;

/// Default candidate budget for [`search_linear`].
pub const DEFAULT_LINEAR_BUDGET: u64 = 1_000_000_000;
/// Default joint-check budget for [`search_table`].
pub const DEFAULT_TABLE_SEARCH_BUDGET: u64 = 10_000_000;
/// Largest alphabet order accepted by the table search.
pub const MAX_TABLE_SEARCH_ORDER: usize = 8;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("network is not well formed: {0}")]
    InvalidNetwork(String),
    #[error("alphabet order {0} exceeds the table-search cap of {1}")]
    AlphabetTooLarge(usize, usize),
    #[error("linear search requires a field alphabet")]
    NotAField,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Codec(#[from] codec::CodecError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Found,
    ExhaustedNone,
    BudgetExceeded,
}

/// Certificate returned by every search. `Found` witnesses are re-verified
/// before being returned; `ExhaustedNone` means the reduced space was fully
/// enumerated, which under sound reductions proves non-existence.
#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub candidates_examined: u64,
    pub budget: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Code>,
}

impl SearchOutcome {
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("outcome serialization");
        s.push('\n');
        s
    }
}

fn ensure_valid(net: &SumNetwork) -> Result<(), SearchError> {
    let violations = net.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(SearchError::InvalidNetwork(
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ))
    }
}

/// Scans indices `[0, limit)` and returns the smallest index accepted by
/// `test`. Workers own disjoint contiguous ranges; a worker stops early only
/// when a strictly lower range has already produced a hit, so the result and
/// every reported counter are independent of `jobs`.
fn parallel_min_index<S, I, T>(limit: u64, jobs: usize, init: I, test: T) -> Option<u64>
where
    S: Send,
    I: Fn() -> S + Sync,
    T: Fn(&mut S, u64) -> bool + Sync,
{
    if limit == 0 {
        return None;
    }
    let jobs = jobs.max(1).min(limit.max(1) as usize);
    if jobs == 1 {
        let mut scratch = init();
        return (0..limit).find(|&i| test(&mut scratch, i));
    }
    let best = AtomicU64::new(u64::MAX);
    let chunk = limit / jobs as u64;
    std::thread::scope(|scope| {
        for j in 0..jobs {
            let start = j as u64 * chunk;
            let end = if j + 1 == jobs { limit } else { start + chunk };
            let best = &best;
            let init = &init;
            let test = &test;
            scope.spawn(move || {
                let mut scratch = init();
                for i in start..end {
                    if best.load(Ordering::Relaxed) < start {
                        return;
                    }
                    if test(&mut scratch, i) {
                        best.fetch_min(i, Ordering::SeqCst);
                        return;
                    }
                }
            });
        }
    });
    let found = best.load(Ordering::SeqCst);
    (found != u64::MAX).then_some(found)
}

// ---------------------------------------------------------------------------
// Scalar (k = l = 1) table search with sound reductions.
// ---------------------------------------------------------------------------

/// Symbolic per-edge value after forwarding normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sym {
    /// The raw message of source `i`.
    Raw(usize),
    /// A constant (edge out of an internal node with no inputs); fixed to 0.
    Const,
    /// The value of free merge function `slot`.
    Free(usize),
}

struct FreeSlot {
    /// Symbolic values of the in-edges of the tail, in edge-list order.
    inputs: Vec<Sym>,
}

struct ScalarProblem {
    q: usize,
    syms: Vec<Sym>,
    /// Candidate sets per slot; `None` when a slot's per-slice survivor
    /// enumeration was cut off by the budget.
    candidates: Vec<Option<SlotCandidates>>,
    /// Some terminal provably cannot decode regardless of the free choices.
    impossible: bool,
}

/// One decodability constraint on a slot, taken from a terminal.
struct Prefilter {
    /// For each input coordinate: is the coordinate's source raw-known at
    /// the terminal?
    known: Vec<bool>,
    /// Distinct source of each input coordinate.
    coord_src: Vec<usize>,
}

impl Prefilter {
    /// Reachable input tuples grouped into (slice of known coordinates,
    /// partial sum of the unknown distinct sources).
    fn classes(&self, q: usize, alphabet: &Alphabet) -> Vec<(usize, usize, Elem)> {
        // Distinct sources feeding the slot, each assigned independently.
        let mut sources: Vec<usize> = self.coord_src.clone();
        sources.sort_unstable();
        sources.dedup();
        let u = sources.len();
        let total = (q as u64).pow(u as u32);
        let mut out = Vec::with_capacity(total as usize);
        for mut w in 0..total {
            let mut value = vec![0 as Elem; u];
            for v in value.iter_mut() {
                *v = (w % q as u64) as Elem;
                w /= q as u64;
            }
            let coord_val = |c: usize| {
                let pos = sources.binary_search(&self.coord_src[c]).unwrap();
                value[pos]
            };
            let mut domain = 0usize;
            for c in (0..self.coord_src.len()).rev() {
                domain = domain * q + coord_val(c) as usize;
            }
            let mut slice = 0usize;
            let mut psum: Elem = 0;
            for (pos, &src) in sources.iter().enumerate() {
                let known = self
                    .coord_src
                    .iter()
                    .zip(&self.known)
                    .any(|(&s, &k)| s == src && k);
                if known {
                    slice = slice * q + value[pos] as usize;
                } else {
                    psum = alphabet.add(psum, value[pos]);
                }
            }
            out.push((domain, slice, psum));
        }
        out
    }
}

/// True when the table respects one constraint: per slice, a value may only
/// be shared by inputs with equal partial sums.
fn satisfies(table: &[Elem], classes: &[(usize, usize, Elem)]) -> bool {
    let mut seen: std::collections::HashMap<(usize, Elem), Elem> =
        std::collections::HashMap::new();
    for &(dom, slice, psum) in classes {
        match seen.entry((slice, table[dom])) {
            std::collections::hash_map::Entry::Occupied(e) => {
                if *e.get() != psum {
                    return false;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(psum);
            }
        }
    }
    true
}

/// Candidate tables for one free slot, indexable without materializing the
/// whole set.
/// Per-slice survivor assignments: for each slice, the admissible
/// (domain index, value) lists in lexicographic value order.
type SliceAssignments = Vec<Vec<Vec<(usize, Elem)>>>;

enum SlotCandidates {
    /// Every function on the domain; the base-q digits of the candidate
    /// index are the table entries.
    Unconstrained { count: u128 },
    /// Survivors of the slot's primary decodability constraint. Slices are
    /// independent, so the survivor set factors: a candidate index is a
    /// mixed-radix number over per-slice assignment lists (slice 0 least
    /// significant). Constraints contributed by further terminals are
    /// checked per candidate. Entries outside the reachable inputs are 0.
    Sliced {
        slices: SliceAssignments,
        count: u128,
        secondary: Vec<Vec<(usize, usize, Elem)>>,
    },
}

impl SlotCandidates {
    fn count(&self) -> u128 {
        match self {
            SlotCandidates::Unconstrained { count } => *count,
            SlotCandidates::Sliced { count, .. } => *count,
        }
    }

    /// Writes candidate `index` into `table`; entries the candidate does not
    /// pin are zero.
    fn write(&self, q: usize, mut index: u128, table: &mut [Elem]) {
        table.fill(0);
        match self {
            SlotCandidates::Unconstrained { .. } => {
                for t in table.iter_mut() {
                    *t = (index % q as u128) as Elem;
                    index /= q as u128;
                }
            }
            SlotCandidates::Sliced { slices, .. } => {
                for slice in slices {
                    let n = slice.len() as u128;
                    let pick = (index % n) as usize;
                    index /= n;
                    for &(dom, v) in &slice[pick] {
                        table[dom] = v;
                    }
                }
            }
        }
    }

    fn secondary_ok(&self, table: &[Elem]) -> bool {
        match self {
            SlotCandidates::Unconstrained { .. } => true,
            SlotCandidates::Sliced { secondary, .. } => {
                secondary.iter().all(|c| satisfies(table, c))
            }
        }
    }
}

/// Per-slice admissible assignments for one constraint, in deterministic
/// slice order. Within a slice, inputs of different partial sums must take
/// pairwise different values; slices do not interact. `None` when a slice's
/// assignment list exceeds `cap`.
fn slice_assignments(
    q: usize,
    classes: &[(usize, usize, Elem)],
    cap: u64,
) -> Option<SliceAssignments> {
    use std::collections::BTreeMap;
    let mut by_slice: BTreeMap<usize, Vec<(usize, Elem)>> = BTreeMap::new();
    for &(dom, slice, psum) in classes {
        let entry = by_slice.entry(slice).or_default();
        if !entry.iter().any(|&(d, _)| d == dom) {
            entry.push((dom, psum));
        }
    }
    let mut out = Vec::with_capacity(by_slice.len());
    for (_, mut members) in by_slice {
        members.sort_unstable();
        // Depth-first over the slice's inputs in domain order, values tried
        // in ascending order; a value is owned by the first partial-sum
        // class that uses it.
        let mut assignments: Vec<Vec<(usize, Elem)>> = Vec::new();
        let mut current: Vec<(usize, Elem)> = Vec::with_capacity(members.len());
        let mut owner: Vec<Option<Elem>> = vec![None; q];
        fn descend(
            pos: usize,
            q: usize,
            members: &[(usize, Elem)],
            owner: &mut Vec<Option<Elem>>,
            current: &mut Vec<(usize, Elem)>,
            out: &mut Vec<Vec<(usize, Elem)>>,
            cap: u64,
        ) -> bool {
            if pos == members.len() {
                if out.len() as u64 >= cap {
                    return false;
                }
                out.push(current.clone());
                return true;
            }
            let (dom, psum) = members[pos];
            for v in 0..q as Elem {
                match owner[v as usize] {
                    Some(p) if p != psum => continue,
                    Some(_) => {
                        current.push((dom, v));
                        if !descend(pos + 1, q, members, owner, current, out, cap) {
                            return false;
                        }
                        current.pop();
                    }
                    None => {
                        owner[v as usize] = Some(psum);
                        current.push((dom, v));
                        if !descend(pos + 1, q, members, owner, current, out, cap) {
                            return false;
                        }
                        current.pop();
                        owner[v as usize] = None;
                    }
                }
            }
            true
        }
        if !descend(0, q, &members, &mut owner, &mut current, &mut assignments, cap) {
            return None;
        }
        out.push(assignments);
    }
    Some(out)
}

/// A constraint whose every slice holds a single partial-sum class imposes
/// nothing and is dropped.
fn is_vacuous(classes: &[(usize, usize, Elem)]) -> bool {
    let mut psum_of_slice: std::collections::HashMap<usize, Elem> =
        std::collections::HashMap::new();
    for &(_, slice, psum) in classes {
        match psum_of_slice.entry(slice) {
            std::collections::hash_map::Entry::Occupied(e) => {
                if *e.get() != psum {
                    return false;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(psum);
            }
        }
    }
    true
}

/// Builds the candidate set for one slot from its constraints. The first
/// non-vacuous constraint shapes the enumeration; the rest are checked per
/// candidate. Returns `None` on budget overflow.
fn build_slot_candidates(
    q: usize,
    domain: usize,
    constraints: Vec<Vec<(usize, usize, Elem)>>,
    cap: u64,
) -> Option<SlotCandidates> {
    let mut live: Vec<Vec<(usize, usize, Elem)>> =
        constraints.into_iter().filter(|c| !is_vacuous(c)).collect();
    if live.is_empty() {
        let count = if domain > 127 {
            u128::MAX
        } else {
            (q as u128).saturating_pow(domain as u32)
        };
        return Some(SlotCandidates::Unconstrained { count });
    }
    let primary = live.remove(0);
    let slices = slice_assignments(q, &primary, cap)?;
    let mut count: u128 = 1;
    for slice in &slices {
        count = count.saturating_mul(slice.len() as u128);
    }
    Some(SlotCandidates::Sliced { slices, count, secondary: live })
}

fn scalar_problem(
    net: &SumNetwork,
    alphabet: &Arc<Alphabet>,
    budget: u64,
) -> Result<ScalarProblem, SearchError> {
    let topo = net.topology().map_err(|e| SearchError::InvalidNetwork(e.to_string()))?;
    let q = alphabet.order();
    let mut syms = vec![Sym::Const; net.edges.len()];
    let mut slots: Vec<FreeSlot> = Vec::new();
    for &e in &topo.topo_edges {
        let tail = topo.edge_tail[e];
        let src = topo.source_idx.iter().position(|&s| s == tail);
        syms[e] = match src {
            Some(i) => Sym::Raw(i),
            None => match topo.in_edges[tail].len() {
                0 => Sym::Const,
                1 => syms[topo.in_edges[tail][0]],
                _ => {
                    let inputs = topo.in_edges[tail].iter().map(|&f| syms[f]).collect();
                    slots.push(FreeSlot { inputs });
                    Sym::Free(slots.len() - 1)
                }
            },
        };
    }

    // Collect decodability prefilters per slot.
    let mut impossible = false;
    let mut filters: Vec<Vec<Prefilter>> = (0..slots.len()).map(|_| Vec::new()).collect();
    for ti in 0..net.terminals.len() {
        let ins = &topo.in_edges[topo.terminal_idx[ti]];
        let mut free_seen: Option<usize> = None;
        let mut raw_srcs: Vec<usize> = Vec::new();
        let mut applicable = true;
        for &f in ins {
            match syms[f] {
                Sym::Raw(i) => raw_srcs.push(i),
                Sym::Const => {}
                Sym::Free(s) => {
                    if free_seen.is_some() {
                        applicable = false;
                        break;
                    }
                    free_seen = Some(s);
                }
            }
        }
        if !applicable {
            continue;
        }
        let Some(slot) = free_seen else {
            // All-raw terminal: decodable iff the raw messages cover every
            // source; otherwise no assignment can help it.
            let covered =
                (0..net.sources.len()).all(|i| raw_srcs.contains(&i));
            if !covered {
                impossible = true;
            }
            continue;
        };
        // The prefilter needs the merge inputs themselves to be raw.
        let inputs = &slots[slot].inputs;
        let all_raw = inputs.iter().all(|s| matches!(s, Sym::Raw(_)));
        if !all_raw {
            continue;
        }
        let coord_src: Vec<usize> = inputs
            .iter()
            .map(|s| match s {
                Sym::Raw(i) => *i,
                _ => unreachable!(),
            })
            .collect();
        let covered = (0..net.sources.len())
            .all(|i| raw_srcs.contains(&i) || coord_src.contains(&i));
        if !covered {
            impossible = true;
            continue;
        }
        let known: Vec<bool> = coord_src.iter().map(|s| raw_srcs.contains(s)).collect();
        filters[slot].push(Prefilter { known, coord_src });
    }

    let mut candidates = Vec::with_capacity(slots.len());
    for (si, slot) in slots.iter().enumerate() {
        let domain = q.pow(slot.inputs.len() as u32);
        let classes: Vec<Vec<(usize, usize, Elem)>> =
            filters[si].iter().map(|p| p.classes(q, alphabet)).collect();
        candidates.push(build_slot_candidates(q, domain, classes, budget));
    }

    Ok(ScalarProblem { q, syms, candidates, impossible })
}

/// Exhaustive (possibly nonlinear) code search. See the module docs for the
/// reductions; `ExhaustedNone` is a non-existence proof for k = l = 1.
pub fn search_table(
    net: &SumNetwork,
    alphabet: &Arc<Alphabet>,
    k: usize,
    l: usize,
    budget: u64,
    jobs: usize,
) -> Result<SearchOutcome, SearchError> {
    ensure_valid(net)?;
    if alphabet.order() > MAX_TABLE_SEARCH_ORDER {
        return Err(SearchError::AlphabetTooLarge(alphabet.order(), MAX_TABLE_SEARCH_ORDER));
    }
    if k == 0 || l == 0 {
        return Err(SearchError::InvalidParams("k and l must be positive".into()));
    }
    if (k, l) != (1, 1) {
        return search_table_general(net, alphabet, k, l, budget);
    }

    let problem = scalar_problem(net, alphabet, budget)?;
    let none = |status: SearchStatus, candidates_examined: u64| SearchOutcome {
        status,
        candidates_examined,
        budget,
        seed: None,
        witness: None,
    };
    if problem.impossible {
        return Ok(none(SearchStatus::ExhaustedNone, 0));
    }
    if problem.candidates.iter().any(|c| c.is_none()) {
        return Ok(none(SearchStatus::BudgetExceeded, 0));
    }
    let slots: Vec<&SlotCandidates> =
        problem.candidates.iter().map(|c| c.as_ref().unwrap()).collect();
    let topo = net.topology().map_err(|e| SearchError::InvalidNetwork(e.to_string()))?;
    let q = problem.q;
    let m = net.sources.len();

    // Refuse domains that could not even be written down as table codes.
    let slot_domains: Vec<usize> = (0..net.edges.len())
        .filter_map(|e| match problem.syms[e] {
            Sym::Free(_) => Some(q.pow(topo.in_edges[topo.edge_tail[e]].len() as u32)),
            _ => None,
        })
        .collect();
    let view_spaces: Vec<usize> = (0..net.terminals.len())
        .map(|ti| q.pow(topo.in_edges[topo.terminal_idx[ti]].len() as u32))
        .collect();
    if slot_domains.iter().chain(&view_spaces).any(|&d| d > codec::TABLE_BUDGET) {
        return Ok(none(SearchStatus::BudgetExceeded, 0));
    }

    let mut space: u128 = 1;
    for slot in &slots {
        space = space.saturating_mul(slot.count());
    }
    let limit = space.min(budget as u128) as u64;
    let radix: Vec<u128> = slots.iter().map(|s| s.count()).collect();

    struct Scratch {
        tables: Vec<Vec<Elem>>,
        vals: Vec<Elem>,
        views: Vec<Vec<Elem>>,
    }
    let term_in: Vec<Vec<usize>> = (0..net.terminals.len())
        .map(|ti| topo.in_edges[topo.terminal_idx[ti]].clone())
        .collect();
    // Structural evaluation plan per edge. Forwarding edges copy their
    // single input; only the defining merge edge applies its slot table.
    #[derive(Clone, Copy)]
    enum Eval {
        Raw(usize),
        Zero,
        Copy(usize),
        Merge(usize),
    }
    let source_of_edge: Vec<Option<usize>> = (0..net.edges.len())
        .map(|e| topo.source_idx.iter().position(|&s| s == topo.edge_tail[e]))
        .collect();
    let mut slot_cursor = 0usize;
    let mut eval_plan = vec![Eval::Zero; net.edges.len()];
    for &e in &topo.topo_edges {
        let tail = topo.edge_tail[e];
        eval_plan[e] = match source_of_edge[e] {
            Some(i) => Eval::Raw(i),
            None => match topo.in_edges[tail].len() {
                0 => Eval::Zero,
                1 => Eval::Copy(topo.in_edges[tail][0]),
                _ => {
                    let s = slot_cursor;
                    slot_cursor += 1;
                    debug_assert!(matches!(problem.syms[e], Sym::Free(fs) if fs == s));
                    Eval::Merge(s)
                }
            },
        };
    }
    debug_assert_eq!(slot_cursor, slots.len());
    let slot_domain: Vec<usize> = {
        let mut v = vec![0usize; slots.len()];
        for (e, plan) in eval_plan.iter().enumerate() {
            if let Eval::Merge(s) = *plan {
                v[s] = q.pow(topo.in_edges[topo.edge_tail[e]].len() as u32);
            }
        }
        v
    };
    let tuple_count = (q as u64).pow(m as u32) as usize;
    let init = || Scratch {
        tables: slot_domain.iter().map(|&d| vec![0 as Elem; d]).collect(),
        vals: vec![0 as Elem; net.edges.len()],
        views: term_in.iter().map(|ins| vec![Elem::MAX; q.pow(ins.len() as u32)]).collect(),
    };
    let evaluate = |scratch: &mut Scratch, index: u64| -> bool {
        let mut rest = index as u128;
        for (s, slot) in slots.iter().enumerate() {
            let pick = rest % radix[s];
            rest /= radix[s];
            slot.write(q, pick, &mut scratch.tables[s]);
            if !slot.secondary_ok(&scratch.tables[s]) {
                return false;
            }
        }
        for view in scratch.views.iter_mut() {
            view.fill(Elem::MAX);
        }
        for tuple in 0..tuple_count as u64 {
            let mut sum: Elem = 0;
            for &e in &topo.topo_edges {
                scratch.vals[e] = match eval_plan[e] {
                    Eval::Raw(i) => ((tuple / (q as u64).pow(i as u32)) % q as u64) as Elem,
                    Eval::Zero => 0,
                    Eval::Copy(f) => scratch.vals[f],
                    Eval::Merge(s) => {
                        let tail = topo.edge_tail[e];
                        let mut ix = 0usize;
                        for &f in topo.in_edges[tail].iter().rev() {
                            ix = ix * q + scratch.vals[f] as usize;
                        }
                        scratch.tables[s][ix]
                    }
                };
            }
            for i in 0..m {
                let x = ((tuple / (q as u64).pow(i as u32)) % q as u64) as Elem;
                sum = alphabet.add(sum, x);
            }
            for (ti, ins) in term_in.iter().enumerate() {
                let mut view = 0usize;
                for &f in ins.iter().rev() {
                    view = view * q + scratch.vals[f] as usize;
                }
                let slot = &mut scratch.views[ti][view];
                if *slot == Elem::MAX {
                    *slot = sum;
                } else if *slot != sum {
                    return false;
                }
            }
        }
        true
    };

    let found = parallel_min_index(limit, jobs, init, |s, i| evaluate(s, i));
    match found {
        Some(index) => {
            // Rebuild the witness tables from the winning index.
            let mut scratch = init();
            assert!(evaluate(&mut scratch, index), "winning index must re-evaluate");
            let mut code = TableCode::new(alphabet.clone(), 1, 1);
            for (e, edge) in net.edges.iter().enumerate() {
                let tail = topo.edge_tail[e];
                let table: Vec<u64> = if topo.source_idx.contains(&tail) {
                    (0..q as u64).collect()
                } else {
                    match topo.in_edges[tail].len() {
                        0 => vec![0],
                        1 => (0..q as u64).collect(),
                        _ => {
                            let Eval::Merge(s) = eval_plan[e] else {
                                unreachable!("merge edges carry free functions");
                            };
                            scratch.tables[s].iter().map(|&v| v as u64).collect()
                        }
                    }
                };
                code.set_edge_table(&edge.id, table);
            }
            for (ti, t) in net.terminals.iter().enumerate() {
                let table: Vec<u64> = scratch.views[ti]
                    .iter()
                    .map(|&v| if v == Elem::MAX { 0 } else { v as u64 })
                    .collect();
                code.set_decoding_table(t, table);
            }
            assert!(
                codec::verify_table(net, &code)?,
                "search witness failed re-verification"
            );
            Ok(SearchOutcome {
                status: SearchStatus::Found,
                candidates_examined: index + 1,
                budget,
                seed: None,
                witness: Some(Code::Table(code)),
            })
        }
        None if space <= budget as u128 => Ok(SearchOutcome {
            status: SearchStatus::ExhaustedNone,
            candidates_examined: space as u64,
            budget,
            seed: None,
            witness: None,
        }),
        None => Ok(SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            candidates_examined: budget,
            budget,
            seed: None,
            witness: None,
        }),
    }
}

/// Unreduced table search for non-scalar parameters: sound and complete but
/// only feasible for tiny networks; anything larger reports
/// `BudgetExceeded` without claiming non-existence.
fn search_table_general(
    net: &SumNetwork,
    alphabet: &Arc<Alphabet>,
    k: usize,
    l: usize,
    budget: u64,
) -> Result<SearchOutcome, SearchError> {
    let topo = net.topology().map_err(|e| SearchError::InvalidNetwork(e.to_string()))?;
    let q = alphabet.order() as u128;
    let qk = q.pow(k as u32);
    let ql = q.pow(l as u32);
    let m = net.sources.len();

    // Candidate count per edge and the joint space.
    let mut per_edge: Vec<u128> = Vec::with_capacity(net.edges.len());
    let mut space: u128 = 1;
    for e in &net.edges {
        let domain = if net.sources.contains(&e.tail) {
            qk
        } else {
            let indeg = net.in_edges_of(&e.tail).len() as u32;
            ql.checked_pow(indeg).unwrap_or(u128::MAX)
        };
        let count = if domain > 64 {
            u128::MAX
        } else {
            ql.checked_pow(domain as u32).unwrap_or(u128::MAX)
        };
        per_edge.push(count);
        space = space.saturating_mul(count);
    }
    let tuple_space = qk.checked_pow(m as u32).unwrap_or(u128::MAX);
    if space > budget as u128 || tuple_space > codec::ENUM_BUDGET {
        return Ok(SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            candidates_examined: 0,
            budget,
            seed: None,
            witness: None,
        });
    }

    let mut outcome = SearchOutcome {
        status: SearchStatus::ExhaustedNone,
        candidates_examined: space as u64,
        budget,
        seed: None,
        witness: None,
    };
    'cand: for index in 0..space as u64 {
        let mut rest = index as u128;
        let mut code = TableCode::new(alphabet.clone(), k, l);
        for (ei, e) in net.edges.iter().enumerate() {
            let count = per_edge[ei];
            let mut fidx = rest % count;
            rest /= count;
            let domain = if net.sources.contains(&e.tail) {
                qk as usize
            } else {
                (ql as usize).pow(net.in_edges_of(&e.tail).len() as u32)
            };
            let mut table = vec![0u64; domain];
            for t in table.iter_mut() {
                *t = (fidx % ql) as u64;
                fidx /= ql;
            }
            code.set_edge_table(&e.id, table);
        }
        // Derive decoders: every terminal's view must determine the sum.
        let mut vals = vec![0u64; net.edges.len()];
        let mut decoders: Vec<std::collections::HashMap<u64, u64>> =
            vec![std::collections::HashMap::new(); net.terminals.len()];
        for tuple in 0..tuple_space as u64 {
            let mut blocks = vec![0u64; m];
            let mut rest = tuple;
            for b in blocks.iter_mut() {
                *b = rest % qk as u64;
                rest /= qk as u64;
            }
            let mut sum = 0u64;
            for pos in (0..k).rev() {
                let mut acc: Elem = 0;
                for &b in &blocks {
                    let sym = (b / (q as u64).pow(pos as u32)) % q as u64;
                    acc = alphabet.add(acc, sym as Elem);
                }
                sum = sum * q as u64 + acc as u64;
            }
            for &e in &topo.topo_edges {
                let tail = topo.edge_tail[e];
                let table = code.edge_table(&net.edges[e].id).unwrap();
                let ix = match net.sources.iter().position(|s| *s == net.edges[e].tail) {
                    Some(si) => blocks[si],
                    None => {
                        let mut ix = 0u64;
                        for &f in topo.in_edges[tail].iter().rev() {
                            ix = ix * ql as u64 + vals[f];
                        }
                        ix
                    }
                };
                vals[e] = table[ix as usize];
            }
            for (ti, _) in net.terminals.iter().enumerate() {
                let mut view = 0u64;
                for &f in topo.in_edges[topo.terminal_idx[ti]].iter().rev() {
                    view = view * ql as u64 + vals[f];
                }
                match decoders[ti].entry(view) {
                    std::collections::hash_map::Entry::Occupied(e) => {
                        if *e.get() != sum {
                            continue 'cand;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(sum);
                    }
                }
            }
        }
        for (ti, t) in net.terminals.iter().enumerate() {
            let views = (ql as u64).pow(topo.in_edges[topo.terminal_idx[ti]].len() as u32);
            let table: Vec<u64> = (0..views)
                .map(|v| decoders[ti].get(&v).copied().unwrap_or(0))
                .collect();
            code.set_decoding_table(t, table);
        }
        assert!(codec::verify_table(net, &code)?, "general witness failed re-verification");
        outcome.status = SearchStatus::Found;
        outcome.candidates_examined = index + 1;
        outcome.witness = Some(Code::Table(code));
        return Ok(outcome);
    }
    Ok(outcome)
}

// ---------------------------------------------------------------------------
// Linear search.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum LinSlot {
    /// Free injection matrix (k x l) for a source out-edge; only present
    /// when k != l, otherwise the injection is normalized to the identity.
    Injection { src: usize, edge: usize },
    /// Free transition matrix (l x l) for a consecutive edge pair at a merge
    /// node. In-degree-1 nodes are normalized to identity transitions.
    Transition { from: usize, to: usize },
}

struct LinearProblem {
    slots: Vec<LinSlot>,
    slot_entries: Vec<usize>,
    /// Edges out of sources when k = l (identity injections).
    fixed_injections: Vec<(usize, usize)>,
    /// Identity transitions at in-degree-1 nodes.
    fixed_transitions: Vec<(usize, usize)>,
}

fn linear_problem(net: &SumNetwork, k: usize, l: usize) -> Result<LinearProblem, SearchError> {
    let topo = net.topology().map_err(|e| SearchError::InvalidNetwork(e.to_string()))?;
    let mut slots = Vec::new();
    let mut slot_entries = Vec::new();
    let mut fixed_injections = Vec::new();
    let mut fixed_transitions = Vec::new();
    let pos_of: Vec<usize> = {
        let mut v = vec![0usize; net.edges.len()];
        for (p, &e) in topo.topo_edges.iter().enumerate() {
            v[e] = p;
        }
        v
    };
    for &e in &topo.topo_edges {
        let tail = topo.edge_tail[e];
        if let Some(si) = topo.source_idx.iter().position(|&s| s == tail) {
            if k == l {
                fixed_injections.push((si, e));
            } else {
                slots.push(LinSlot::Injection { src: si, edge: e });
                slot_entries.push(k * l);
            }
            continue;
        }
        let ins = &topo.in_edges[tail];
        match ins.len() {
            0 => {}
            1 => fixed_transitions.push((ins[0], e)),
            _ => {
                let mut sorted: Vec<usize> = ins.clone();
                sorted.sort_by_key(|&f| pos_of[f]);
                for f in sorted {
                    slots.push(LinSlot::Transition { from: f, to: e });
                    slot_entries.push(l * l);
                }
            }
        }
    }
    Ok(LinearProblem { slots, slot_entries, fixed_injections, fixed_transitions })
}

/// In-place Gaussian elimination deciding whether `A X = B` is solvable,
/// over the augmented row-major buffer `[A | B]` of `rows` rows and
/// `cols_a + cols_b` columns.
fn solvable_flat(
    field: &Alphabet,
    buf: &mut [Elem],
    rows: usize,
    cols_a: usize,
    cols_b: usize,
) -> bool {
    let stride = cols_a + cols_b;
    let mut rank = 0usize;
    for col in 0..cols_a {
        let Some(pr) = (rank..rows).find(|&r| buf[r * stride + col] != 0) else {
            continue;
        };
        if pr != rank {
            for c in 0..stride {
                buf.swap(rank * stride + c, pr * stride + c);
            }
        }
        let pinv = field.inv(buf[rank * stride + col]);
        if pinv != 1 {
            for c in col..stride {
                buf[rank * stride + c] = field.mul(buf[rank * stride + c], pinv);
            }
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let factor = buf[r * stride + col];
            if factor == 0 {
                continue;
            }
            for c in col..stride {
                let sub = field.mul(factor, buf[rank * stride + c]);
                buf[r * stride + c] = field.sub(buf[r * stride + c], sub);
            }
        }
        rank += 1;
        if rank == rows {
            return true;
        }
    }
    for r in rank..rows {
        for c in cols_a..stride {
            if buf[r * stride + c] != 0 {
                return false;
            }
        }
    }
    true
}

struct LinearEvaluator<'a> {
    net: &'a SumNetwork,
    field: &'a Alphabet,
    k: usize,
    l: usize,
    q: u64,
    topo_edges: Vec<usize>,
    in_edges: Vec<Vec<usize>>,
    terminal_idx: Vec<usize>,
    source_idx: Vec<usize>,
    source_of_edge: Vec<Option<usize>>,
    /// Free injection slot per edge, if any.
    inj_slot: Vec<Option<usize>>,
    /// Free transition slots grouped by target edge: (from-edge, slot).
    trans_slots: Vec<Vec<(usize, usize)>>,
    /// Identity transitions grouped by target edge.
    fixed_trans: Vec<Vec<usize>>,
    problem: LinearProblem,
}

struct LinearScratch {
    /// Free slot matrices, flattened per slot.
    slot_vals: Vec<Vec<Elem>>,
    /// Transfer table `[source * edges + edge] * (k*l)`.
    transfer: Vec<Elem>,
    /// Augmented solve buffer.
    solve: Vec<Elem>,
}

impl<'a> LinearEvaluator<'a> {
    fn new(
        net: &'a SumNetwork,
        field: &'a Alphabet,
        k: usize,
        l: usize,
        problem: LinearProblem,
    ) -> Result<Self, SearchError> {
        let topo = net.topology().map_err(|e| SearchError::InvalidNetwork(e.to_string()))?;
        let source_of_edge: Vec<Option<usize>> = (0..net.edges.len())
            .map(|e| topo.source_idx.iter().position(|&s| s == topo.edge_tail[e]))
            .collect();
        let ecount = net.edges.len();
        let mut inj_slot: Vec<Option<usize>> = vec![None; ecount];
        let mut trans_slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ecount];
        for (si, slot) in problem.slots.iter().enumerate() {
            match *slot {
                LinSlot::Injection { edge, .. } => inj_slot[edge] = Some(si),
                LinSlot::Transition { from, to } => trans_slots[to].push((from, si)),
            }
        }
        let mut fixed_trans: Vec<Vec<usize>> = vec![Vec::new(); ecount];
        for &(from, to) in &problem.fixed_transitions {
            fixed_trans[to].push(from);
        }
        Ok(LinearEvaluator {
            net,
            field,
            k,
            l,
            q: field.order() as u64,
            topo_edges: topo.topo_edges.clone(),
            in_edges: topo.in_edges.clone(),
            terminal_idx: topo.terminal_idx.clone(),
            source_idx: topo.source_idx.clone(),
            source_of_edge,
            inj_slot,
            trans_slots,
            fixed_trans,
            problem,
        })
    }

    fn scratch(&self) -> LinearScratch {
        let m = self.source_idx.len();
        let ecount = self.net.edges.len();
        let max_indeg = self.in_edges.iter().map(|v| v.len()).max().unwrap_or(0);
        LinearScratch {
            slot_vals: self.problem.slot_entries.iter().map(|&n| vec![0; n]).collect(),
            transfer: vec![0; m * ecount * self.k * self.l],
            solve: vec![0; (m * self.k) * (max_indeg * self.l + self.k)],
        }
    }

    fn load_candidate(&self, scratch: &mut LinearScratch, index: u64) {
        let mut rest = index as u128;
        for vals in scratch.slot_vals.iter_mut() {
            for v in vals.iter_mut() {
                *v = (rest % self.q as u128) as Elem;
                rest /= self.q as u128;
            }
        }
    }

    /// Computes all transfer blocks for the loaded candidate.
    fn compute_transfer(&self, scratch: &mut LinearScratch) {
        let (k, l) = (self.k, self.l);
        let kl = k * l;
        let m = self.source_idx.len();
        let ecount = self.net.edges.len();
        let LinearScratch { slot_vals, transfer, .. } = scratch;
        transfer.fill(0);

        for &e in &self.topo_edges {
            if let Some(si_src) = self.source_of_edge[e] {
                let base = (si_src * ecount + e) * kl;
                if self.k == self.l {
                    for r in 0..k {
                        transfer[base + r * l + r] = 1;
                    }
                } else if let Some(slot) = self.inj_slot[e] {
                    transfer[base..base + kl].copy_from_slice(&slot_vals[slot]);
                }
                continue;
            }
            for src in 0..m {
                // acc = sum over in-edges f of A[src,f] * T[f,e]
                let out_base = (src * ecount + e) * kl;
                for &f in &self.fixed_trans[e] {
                    let in_base = (src * ecount + f) * kl;
                    for idx in 0..kl {
                        let cur = transfer[out_base + idx];
                        let add = transfer[in_base + idx];
                        transfer[out_base + idx] = self.field.add(cur, add);
                    }
                }
                for &(f, slot) in &self.trans_slots[e] {
                    let in_base = (src * ecount + f) * kl;
                    for r in 0..k {
                        for c in 0..l {
                            let mut acc = transfer[out_base + r * l + c];
                            for t in 0..l {
                                let a = transfer[in_base + r * l + t];
                                if a == 0 {
                                    continue;
                                }
                                let b = slot_vals[slot][t * l + c];
                                if b == 0 {
                                    continue;
                                }
                                acc = self.field.add(acc, self.field.mul(a, b));
                            }
                            transfer[out_base + r * l + c] = acc;
                        }
                    }
                }
            }
        }
    }

    /// True when every terminal's decoding system is solvable.
    fn decodable(&self, scratch: &mut LinearScratch) -> bool {
        let (k, l) = (self.k, self.l);
        let kl = k * l;
        let m = self.source_idx.len();
        let ecount = self.net.edges.len();
        let LinearScratch { transfer, solve, .. } = scratch;
        for &t in &self.terminal_idx {
            let ins = &self.in_edges[t];
            let cols_a = ins.len() * l;
            let cols_b = k;
            let rows = m * k;
            let stride = cols_a + cols_b;
            let buf = &mut solve[..rows * stride];
            buf.fill(0);
            for src in 0..m {
                for (j, &f) in ins.iter().enumerate() {
                    let base = (src * ecount + f) * kl;
                    for r in 0..k {
                        for c in 0..l {
                            buf[(src * k + r) * stride + j * l + c] =
                                transfer[base + r * l + c];
                        }
                    }
                }
                for r in 0..k {
                    buf[(src * k + r) * stride + cols_a + r] = 1;
                }
            }
            if !solvable_flat(self.field, buf, rows, cols_a, cols_b) {
                return false;
            }
        }
        true
    }

    fn test(&self, scratch: &mut LinearScratch, index: u64) -> bool {
        self.load_candidate(scratch, index);
        self.compute_transfer(scratch);
        self.decodable(scratch)
    }

    /// Materializes the candidate at `index` as a full linear code with
    /// derived decoders.
    fn build_code(
        &self,
        field: &Arc<Alphabet>,
        scratch: &mut LinearScratch,
        index: u64,
    ) -> Result<LinearCode, SearchError> {
        self.load_candidate(scratch, index);
        let (k, l) = (self.k, self.l);
        let mut code = LinearCode::new(field.clone(), k, l);
        let identity_k = FMatrix::identity(field.clone(), k);
        let identity_l = FMatrix::identity(field.clone(), l);
        for &(si, e) in &self.problem.fixed_injections {
            code.set_injection(&self.net.sources[si], &self.net.edges[e].id, identity_k.clone())?;
        }
        for &(f, e) in &self.problem.fixed_transitions {
            code.set_transition(&self.net.edges[f].id, &self.net.edges[e].id, identity_l.clone())?;
        }
        for (si, slot) in self.problem.slots.iter().enumerate() {
            let vals = &scratch.slot_vals[si];
            match *slot {
                LinSlot::Injection { src, edge } => {
                    let mut mat = FMatrix::zeros(field.clone(), k, l);
                    for r in 0..k {
                        for c in 0..l {
                            mat.set(r, c, vals[r * l + c]);
                        }
                    }
                    code.set_injection(&self.net.sources[src], &self.net.edges[edge].id, mat)?;
                }
                LinSlot::Transition { from, to } => {
                    let mut mat = FMatrix::zeros(field.clone(), l, l);
                    for r in 0..l {
                        for c in 0..l {
                            mat.set(r, c, vals[r * l + c]);
                        }
                    }
                    code.set_transition(
                        &self.net.edges[from].id,
                        &self.net.edges[to].id,
                        mat,
                    )?;
                }
            }
        }
        derive_decoders(self.net, &mut code)?;
        Ok(code)
    }
}

/// Solves the stacked terminal equations for every terminal and installs the
/// decoding matrices. Errors when some terminal has no solution.
pub(crate) fn derive_decoders(net: &SumNetwork, code: &mut LinearCode) -> Result<(), SearchError> {
    let field = code.field().clone();
    let table = codec::transfer_table(net, code)?;
    let ecount = net.edges.len();
    let m = net.sources.len();
    let k = code.k;
    for t in net.terminals.clone() {
        let ins = net.in_edges_of(&t);
        if ins.is_empty() {
            return Err(SearchError::InvalidParams(format!(
                "terminal `{t}` has no in-edges"
            )));
        }
        // M = [A[i,e_1] | ... | A[i,e_d]] stacked over sources, B = stacked I_k.
        let mut rows: Option<FMatrix> = None;
        let mut rhs: Option<FMatrix> = None;
        for si in 0..m {
            let mut row: Option<FMatrix> = None;
            for e in &ins {
                let ei = net.edges.iter().position(|x| x.id == e.id).unwrap();
                let block = table[si * ecount + ei].clone();
                row = Some(match row {
                    None => block,
                    Some(r) => r.hstack(&block).map_err(codec::CodecError::from)?,
                });
            }
            let row = row.unwrap();
            rows = Some(match rows {
                None => row,
                Some(r) => r.vstack(&row).map_err(codec::CodecError::from)?,
            });
            let id = FMatrix::identity(field.clone(), k);
            rhs = Some(match rhs {
                None => id,
                Some(r) => r.vstack(&id).map_err(codec::CodecError::from)?,
            });
        }
        let m_mat = rows.unwrap();
        let b_mat = rhs.unwrap();
        let solution = m_mat
            .solve_right(&b_mat)
            .map_err(codec::CodecError::from)?
            .ok_or_else(|| {
                SearchError::InvalidParams(format!("terminal `{t}` cannot decode"))
            })?;
        for (j, e) in ins.iter().enumerate() {
            let mut block = FMatrix::zeros(field.clone(), code.l, k);
            for r in 0..code.l {
                for c in 0..k {
                    block.set(r, c, solution.get(j * code.l + r, c));
                }
            }
            code.set_decoding(&t, &e.id, block)?;
        }
    }
    Ok(())
}

/// Exhaustive linear code search over the normalized free-coefficient space.
/// `ExhaustedNone` proves no (k,l) linear solution exists over the field.
pub fn search_linear(
    net: &SumNetwork,
    field: &Arc<Alphabet>,
    k: usize,
    l: usize,
    budget: u64,
    jobs: usize,
) -> Result<SearchOutcome, SearchError> {
    ensure_valid(net)?;
    if !field.is_field() {
        return Err(SearchError::NotAField);
    }
    if k == 0 || l == 0 {
        return Err(SearchError::InvalidParams("k and l must be positive".into()));
    }
    let problem = linear_problem(net, k, l)?;
    let q = field.order() as u128;
    let mut space: u128 = 1;
    for &entries in &problem.slot_entries {
        space = space.saturating_mul(q.saturating_pow(entries as u32));
    }
    let limit = space.min(budget as u128) as u64;
    let evaluator = LinearEvaluator::new(net, field, k, l, problem)?;

    let found = parallel_min_index(
        limit,
        jobs,
        || evaluator.scratch(),
        |scratch, index| evaluator.test(scratch, index),
    );
    match found {
        Some(index) => {
            let mut scratch = evaluator.scratch();
            let code = evaluator.build_code(field, &mut scratch, index)?;
            assert!(
                codec::verify_linear(net, &code)?,
                "linear search witness failed re-verification"
            );
            Ok(SearchOutcome {
                status: SearchStatus::Found,
                candidates_examined: index + 1,
                budget,
                seed: None,
                witness: Some(Code::Linear(code)),
            })
        }
        None if space <= budget as u128 => Ok(SearchOutcome {
            status: SearchStatus::ExhaustedNone,
            candidates_examined: space as u64,
            budget,
            seed: None,
            witness: None,
        }),
        None => Ok(SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            candidates_examined: budget,
            budget,
            seed: None,
            witness: None,
        }),
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&trial.to_le_bytes());
    bytes[16..26].copy_from_slice(b"sumnet-rnd");
    ChaCha8Rng::from_seed(bytes)
}

/// Samples uniform local coefficient matrices for every adjacency, derives
/// decoders by linear solve, and returns the first verified code. The trial
/// index drives the randomness, so the outcome is reproducible and
/// independent of the worker count. Never claims non-existence.
pub fn search_random_linear(
    net: &SumNetwork,
    field: &Arc<Alphabet>,
    k: usize,
    l: usize,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<SearchOutcome, SearchError> {
    ensure_valid(net)?;
    if !field.is_field() {
        return Err(SearchError::NotAField);
    }
    if k == 0 || l == 0 || trials == 0 {
        return Err(SearchError::InvalidParams(
            "k, l and trials must be positive".into(),
        ));
    }
    let q = field.order() as u64;

    let sample = |trial: u64| -> Result<LinearCode, SearchError> {
        let mut rng = trial_rng(seed, trial);
        let mut code = LinearCode::new(field.clone(), k, l);
        for e in &net.edges {
            if net.sources.contains(&e.tail) {
                let mut m = FMatrix::zeros(field.clone(), k, l);
                for r in 0..k {
                    for c in 0..l {
                        m.set(r, c, rng.gen_range(0..q) as Elem);
                    }
                }
                code.set_injection(&e.tail, &e.id, m)?;
            }
            for out in net.out_edges_of(&e.head) {
                let mut m = FMatrix::zeros(field.clone(), l, l);
                for r in 0..l {
                    for c in 0..l {
                        m.set(r, c, rng.gen_range(0..q) as Elem);
                    }
                }
                code.set_transition(&e.id, &out.id, m)?;
            }
        }
        Ok(code)
    };

    let found = parallel_min_index(
        trials,
        jobs,
        || (),
        |_, trial| {
            let Ok(mut code) = sample(trial) else {
                return false;
            };
            if derive_decoders(net, &mut code).is_err() {
                return false;
            }
            codec::verify_linear(net, &code).unwrap_or(false)
        },
    );
    match found {
        Some(trial) => {
            let mut code = sample(trial)?;
            derive_decoders(net, &mut code)?;
            assert!(
                codec::verify_linear(net, &code)?,
                "random search witness failed re-verification"
            );
            Ok(SearchOutcome {
                status: SearchStatus::Found,
                candidates_examined: trial + 1,
                budget: trials,
                seed: Some(seed),
                witness: Some(Code::Linear(code)),
            })
        }
        None => Ok(SearchOutcome {
            status: SearchStatus::BudgetExceeded,
            candidates_examined: trials,
            budget: trials,
            seed: Some(seed),
            witness: None,
        }),
    }
}
