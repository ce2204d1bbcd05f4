//! Constructive achievability: builds verified fractional linear codes by
//! composing per-slot scalar codes into block codes.
//!
//! The slot mechanism is time sharing. A slot plan fixes, for each of the l
//! slots, a target combination of the k block sums (with 0/1 coefficients)
//! and the pair of terminals the slot serves; a scalar code realizes each
//! slot, and a per-terminal post-combination matrix maps the received slot
//! values back to the k sums. Assembly is block-diagonal: slot j occupies
//! component j of every edge vector.
//!
//! The scalar subroutines (two-terminal sum delivery and single-source
//! multicast) are realized by seeded randomized linear coding with
//! verification and retry. When the caller permits any sufficiently large
//! field, a failed construction escalates GF(p^r) -> GF(p^(r+1)) -> ... up
//! to order 256; otherwise it fails hard at the requested field. Every
//! scheme re-verifies its output and never returns an unverified code.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraError, Alphabet, AlphabetSpec, Elem, FMatrix};
use crate::codec::{self, CodecError, LinearCode};
use crate::duality::{dual_code, DualityError};
use crate::netgraph::{NetError, SumNetwork};
use crate::search::{search_random_linear, SearchError, SearchStatus};
use crate::Code;

/// Random-search retries per scalar subroutine.
pub const DEFAULT_SCHEME_TRIALS: u64 = 20_000;

#[derive(Debug, Error)]
pub enum SchemeError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("assembled code failed verification; the assembly is faulty")]
    AssemblyNotVerified,
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Whether a scheme may retry on larger fields of the same characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldPolicy {
    /// Use exactly the requested field; fail if the construction misses.
    Exact,
    /// Escalate the extension degree up to order 256 on failure.
    Escalate,
}

fn field_ladder(field: &Arc<Alphabet>, policy: FieldPolicy) -> Vec<Arc<Alphabet>> {
    match policy {
        FieldPolicy::Exact => vec![field.clone()],
        FieldPolicy::Escalate => {
            let AlphabetSpec::Field { p, r } = *field.spec() else {
                return vec![field.clone()];
            };
            let mut out = Vec::new();
            let mut degree = r;
            while (p as u128).pow(degree) <= 256 {
                if let Ok(f) = Alphabet::field(p, degree) {
                    out.push(f);
                }
                degree += 1;
            }
            if out.is_empty() {
                out.push(field.clone());
            }
            out
        }
    }
}

fn subseed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A (1,1) linear code delivering the sum of all sources to the two given
/// terminals, found by seeded random linear coding on the sub-problem whose
/// terminal set is `{t_a, t_b}`. Requires every source connected to both.
pub fn scheme_two_terminal(
    net: &SumNetwork,
    t_a: &str,
    t_b: &str,
    field: &Arc<Alphabet>,
    seed: u64,
) -> Result<LinearCode, SchemeError> {
    for t in [t_a, t_b] {
        if !net.terminals.iter().any(|x| x == t) {
            return Err(SchemeError::Precondition(format!("`{t}` is not a terminal")));
        }
    }
    for s in &net.sources {
        for t in [t_a, t_b] {
            if net.min_cut(s, t)? == 0 {
                return Err(SchemeError::Precondition(format!(
                    "source `{s}` is not connected to terminal `{t}`"
                )));
            }
        }
    }
    let sub = net.with_terminals(&[t_a, t_b]);
    let outcome = search_random_linear(&sub, field, 1, 1, DEFAULT_SCHEME_TRIALS, seed, 1)?;
    match outcome.status {
        SearchStatus::Found => match outcome.witness {
            Some(Code::Linear(code)) => Ok(code),
            _ => unreachable!("random linear search returns linear witnesses"),
        },
        _ => Err(SchemeError::ConstructionFailed(format!(
            "no ({t_a},{t_b}) sum code found in {DEFAULT_SCHEME_TRIALS} random trials over {}",
            field.spec()
        ))),
    }
}

/// An (eta,1) code multicasting `source`'s block to every terminal, with all
/// other sources silenced. Requires min-cut at least `eta` from the source
/// to each terminal.
pub fn scheme_multicast(
    net: &SumNetwork,
    source: &str,
    eta: usize,
    field: &Arc<Alphabet>,
    seed: u64,
) -> Result<LinearCode, SchemeError> {
    if !net.sources.iter().any(|s| s == source) {
        return Err(SchemeError::Precondition(format!("`{source}` is not a source")));
    }
    if eta == 0 {
        return Err(SchemeError::Precondition("multicast rate must be positive".into()));
    }
    for t in &net.terminals {
        let cut = net.min_cut(source, t)?;
        if cut < eta {
            return Err(SchemeError::Precondition(format!(
                "min-cut({source}, {t}) = {cut} < {eta}"
            )));
        }
    }
    let sub = net.with_sources(&[source]);
    let outcome = search_random_linear(&sub, field, eta, 1, DEFAULT_SCHEME_TRIALS, seed, 1)?;
    match outcome.status {
        SearchStatus::Found => match outcome.witness {
            Some(Code::Linear(code)) => Ok(code),
            _ => unreachable!("random linear search returns linear witnesses"),
        },
        _ => Err(SchemeError::ConstructionFailed(format!(
            "no rate-{eta} multicast from `{source}` found in {DEFAULT_SCHEME_TRIALS} trials \
             over {}",
            field.spec()
        ))),
    }
}

/// Capacity-achieving code for a one-terminal network: the reverse network
/// is a multicast network, so a multicast code is built there and mapped
/// back through the dual transform. Rate is exactly the min-cut bound.
pub fn scheme_one_terminal(
    net: &SumNetwork,
    field: &Arc<Alphabet>,
    policy: FieldPolicy,
    seed: u64,
) -> Result<LinearCode, SchemeError> {
    if net.terminal_count() != 1 {
        return Err(SchemeError::Precondition(format!(
            "expected exactly one terminal, got {}",
            net.terminal_count()
        )));
    }
    let eta = net.min_cut_bound()?;
    if eta == 0 {
        return Err(SchemeError::Precondition(
            "a source is disconnected from the terminal".into(),
        ));
    }
    let reverse = net.reverse_network();
    let mc_source = net.terminals[0].clone();
    let mut last = None;
    for f in field_ladder(field, policy) {
        match scheme_multicast(&reverse, &mc_source, eta, &f, subseed(seed, 0x17)) {
            Ok(multicast) => {
                let code = dual_code(&reverse, &multicast)?;
                debug_assert_eq!(reverse.reverse_network(), *net);
                if !codec::verify_linear(net, &code)? {
                    return Err(SchemeError::AssemblyNotVerified);
                }
                return Ok(code);
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("field ladder is never empty"))
}

/// One time slot of a slot plan: a target combination of the block sums
/// (0/1 coefficients), the terminals it serves, and the scalar code
/// realizing it.
#[derive(Debug, Clone)]
pub struct Slot {
    pub target: Vec<Elem>,
    pub recipients: Vec<String>,
    pub code: LinearCode,
}

/// A complete time-sharing schedule plus the per-terminal post-combination
/// matrices mapping received slot values to the k block sums.
#[derive(Debug, Clone)]
pub struct SlotPlan {
    pub k: usize,
    pub field: Arc<Alphabet>,
    pub slots: Vec<Slot>,
    pub post: BTreeMap<String, FMatrix>,
}

impl SlotPlan {
    pub fn l(&self) -> usize {
        self.slots.len()
    }

    /// Checks that every terminal's received slots and post-combination
    /// reconstruct the k sums exactly: sum_j target_j[r] * post[j][r'] must
    /// be the identity in (r, r'), with post rows zero outside the slots the
    /// terminal receives.
    pub fn check_reconstruction(&self) -> Result<(), SchemeError> {
        let f = &self.field;
        for (terminal, post) in &self.post {
            for (j, slot) in self.slots.iter().enumerate() {
                if !slot.recipients.iter().any(|r| r == terminal) {
                    for c in 0..self.k {
                        if post.get(j, c) != 0 {
                            return Err(SchemeError::ConstructionFailed(format!(
                                "terminal `{terminal}` combines slot {j} it does not receive"
                            )));
                        }
                    }
                }
            }
            for r in 0..self.k {
                for c in 0..self.k {
                    let mut acc: Elem = 0;
                    for (j, slot) in self.slots.iter().enumerate() {
                        acc = f.add(acc, f.mul(slot.target[r], post.get(j, c)));
                    }
                    let expect = u16::from(r == c);
                    if acc != expect {
                        return Err(SchemeError::ConstructionFailed(format!(
                            "terminal `{terminal}` does not reconstruct sum {r}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Block-diagonal assembly of the slot codes into one (k, l) code.
    pub fn assemble(&self, net: &SumNetwork) -> Result<LinearCode, SchemeError> {
        let k = self.k;
        let l = self.slots.len();
        let f = &self.field;
        let mut code = LinearCode::new(f.clone(), k, l);
        let mut injections: BTreeMap<(String, String), FMatrix> = BTreeMap::new();
        let mut transitions: BTreeMap<(String, String), FMatrix> = BTreeMap::new();
        let mut decodings: BTreeMap<(String, String), FMatrix> = BTreeMap::new();
        for (j, slot) in self.slots.iter().enumerate() {
            for ((s, e), m) in slot.code.injections() {
                let coeff = m.get(0, 0);
                if coeff == 0 {
                    continue;
                }
                let entry = injections
                    .entry((s.clone(), e.clone()))
                    .or_insert_with(|| FMatrix::zeros(f.clone(), k, l));
                for r in 0..k {
                    entry.set(r, j, f.mul(slot.target[r], coeff));
                }
            }
            for ((from, to), m) in slot.code.transitions() {
                let coeff = m.get(0, 0);
                if coeff == 0 {
                    continue;
                }
                let entry = transitions
                    .entry((from.clone(), to.clone()))
                    .or_insert_with(|| FMatrix::zeros(f.clone(), l, l));
                entry.set(j, j, coeff);
            }
            for ((t, e), m) in slot.code.decodings() {
                let coeff = m.get(0, 0);
                if coeff == 0 {
                    continue;
                }
                let Some(post) = self.post.get(t) else {
                    continue;
                };
                let entry = decodings
                    .entry((t.clone(), e.clone()))
                    .or_insert_with(|| FMatrix::zeros(f.clone(), l, k));
                for c in 0..k {
                    let cur = entry.get(j, c);
                    entry.set(j, c, f.add(cur, f.mul(coeff, post.get(j, c))));
                }
            }
        }
        for ((s, e), m) in injections {
            code.set_injection(&s, &e, m)?;
        }
        for ((from, to), m) in transitions {
            code.set_transition(&from, &to, m)?;
        }
        for ((t, e), m) in decodings {
            code.set_decoding(&t, &e, m)?;
        }
        if !codec::verify_linear(net, &code)? {
            return Err(SchemeError::AssemblyNotVerified);
        }
        Ok(code)
    }

    /// Human-readable slot schedule.
    pub fn summary(&self) -> String {
        let mut out = String::from("slot  target     recipients\n");
        for (j, slot) in self.slots.iter().enumerate() {
            let target: Vec<String> = slot
                .target
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(r, _)| format!("Sum{}", r + 1))
                .collect();
            out.push_str(&format!(
                "{:<5} {:<10} {}\n",
                j + 1,
                target.join("+"),
                slot.recipients.join(", ")
            ));
        }
        out
    }
}

/// Builds the per-terminal post-combination matrices for a schedule by
/// solving the reconstruction equations.
fn solve_post(
    field: &Arc<Alphabet>,
    k: usize,
    slots: &[(Vec<Elem>, Vec<String>)],
    terminals: &[String],
) -> Result<BTreeMap<String, FMatrix>, SchemeError> {
    let mut post = BTreeMap::new();
    for t in terminals {
        let received: Vec<usize> = slots
            .iter()
            .enumerate()
            .filter(|(_, (_, recips))| recips.iter().any(|r| r == t))
            .map(|(j, _)| j)
            .collect();
        // T^T q = I_k where T stacks the received targets as rows.
        let mut tt = FMatrix::zeros(field.clone(), k, received.len());
        for (col, &j) in received.iter().enumerate() {
            for r in 0..k {
                tt.set(r, col, slots[j].0[r]);
            }
        }
        let identity = FMatrix::identity(field.clone(), k);
        let solution = tt
            .solve_right(&identity)?
            .ok_or_else(|| {
                SchemeError::ConstructionFailed(format!(
                    "terminal `{t}` cannot reconstruct the sums from its slots"
                ))
            })?;
        let mut m = FMatrix::zeros(field.clone(), slots.len(), k);
        for (row, &j) in received.iter().enumerate() {
            for c in 0..k {
                m.set(j, c, solution.get(row, c));
            }
        }
        post.insert(t.clone(), m);
    }
    Ok(post)
}

/// Runs a schedule of (target, recipient-pair) slots at one field: builds
/// each slot's scalar code and assembles the block code.
fn build_slot_plan(
    net: &SumNetwork,
    field: &Arc<Alphabet>,
    k: usize,
    schedule: &[(Vec<Elem>, Vec<String>)],
    seed: u64,
) -> Result<(LinearCode, SlotPlan), SchemeError> {
    let mut slots = Vec::with_capacity(schedule.len());
    for (j, (target, recipients)) in schedule.iter().enumerate() {
        assert_eq!(recipients.len(), 2, "slots serve terminal pairs");
        let code = scheme_two_terminal(
            net,
            &recipients[0],
            &recipients[1],
            field,
            subseed(seed, j as u64 + 1),
        )?;
        slots.push(Slot { target: target.clone(), recipients: recipients.clone(), code });
    }
    let post = solve_post(field, k, schedule, &net.terminals)?;
    let plan = SlotPlan { k, field: field.clone(), slots, post };
    plan.check_reconstruction()?;
    let code = plan.assemble(net)?;
    Ok((code, plan))
}

/// The three-terminal time-sharing schedule: Sum1 to {t1,t2}, Sum2 to
/// {t2,t3}, Sum1+Sum2 to {t1,t3}; t1 and t3 recover the missing sum by
/// subtraction in the post-combination.
fn three_terminal_schedule(terminals: &[String]) -> Vec<(Vec<Elem>, Vec<String>)> {
    let (t1, t2, t3) = (&terminals[0], &terminals[1], &terminals[2]);
    vec![
        (vec![1, 0], vec![t1.clone(), t2.clone()]),
        (vec![0, 1], vec![t2.clone(), t3.clone()]),
        (vec![1, 1], vec![t1.clone(), t3.clone()]),
    ]
}

/// A verified (2,3) code on a network with three terminals (or three
/// sources, via the reverse network and the dual transform). Rate exactly
/// 2/3. When the reverse reduction is used, the returned plan describes the
/// reverse-network schedule.
pub fn scheme_three_terminal(
    net: &SumNetwork,
    field: &Arc<Alphabet>,
    policy: FieldPolicy,
    seed: u64,
) -> Result<(LinearCode, SlotPlan), SchemeError> {
    let (m, n) = (net.source_count(), net.terminal_count());
    if n != 3 {
        if m == 3 && n > 3 {
            let reverse = net.reverse_network();
            let (code, plan) = scheme_three_terminal(&reverse, field, policy, seed)?;
            let dual = dual_code(&reverse, &code)?;
            if !codec::verify_linear(net, &dual)? {
                return Err(SchemeError::AssemblyNotVerified);
            }
            return Ok((dual, plan));
        }
        return Err(SchemeError::Precondition(format!(
            "needs three terminals (or three sources with more terminals); got m={m}, n={n}"
        )));
    }
    if net.min_cut_bound()? == 0 {
        return Err(SchemeError::Precondition(
            "some source-terminal pair is disconnected".into(),
        ));
    }
    let schedule = three_terminal_schedule(&net.terminals);
    let mut last = None;
    for f in field_ladder(field, policy) {
        match build_slot_plan(net, &f, 2, &schedule, seed) {
            Ok(result) => return Ok(result),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("field ladder is never empty"))
}

/// A verified (2, min(m,n)) code: terminals are grouped into pairs (plus one
/// triple when the count is odd) and the two sums are time-shared across the
/// groups. Operates on the reverse network when the terminal side is not
/// the smaller one. Rate exactly 2/min(m,n).
pub fn scheme_pairing(
    net: &SumNetwork,
    field: &Arc<Alphabet>,
    policy: FieldPolicy,
    seed: u64,
) -> Result<(LinearCode, SlotPlan), SchemeError> {
    let (m, n) = (net.source_count(), net.terminal_count());
    let n_min = m.min(n);
    if n_min < 2 {
        return Err(SchemeError::Precondition(format!(
            "pairing needs min(m,n) >= 2; got m={m}, n={n}"
        )));
    }
    if net.min_cut_bound()? == 0 {
        return Err(SchemeError::Precondition(
            "some source-terminal pair is disconnected".into(),
        ));
    }
    if n_min == 3 {
        return scheme_three_terminal(net, field, policy, seed);
    }
    if n > m {
        let reverse = net.reverse_network();
        let (code, plan) = scheme_pairing(&reverse, field, policy, seed)?;
        let dual = dual_code(&reverse, &code)?;
        if !codec::verify_linear(net, &dual)? {
            return Err(SchemeError::AssemblyNotVerified);
        }
        return Ok((dual, plan));
    }

    let terminals = &net.terminals;
    let mut schedule: Vec<(Vec<Elem>, Vec<String>)> = Vec::with_capacity(n_min);
    if n_min % 2 == 0 {
        // All pairs receive Sum1 first, then Sum2.
        for target in [vec![1, 0], vec![0, 1]] {
            for pair in terminals.chunks(2) {
                schedule.push((target.clone(), vec![pair[0].clone(), pair[1].clone()]));
            }
        }
    } else {
        // (n-3)/2 pairs plus the closing triple.
        let (paired, triple) = terminals.split_at(n_min - 3);
        for pair in paired.chunks(2) {
            schedule.push((vec![1, 0], vec![pair[0].clone(), pair[1].clone()]));
            schedule.push((vec![0, 1], vec![pair[0].clone(), pair[1].clone()]));
        }
        schedule.extend(three_terminal_schedule(triple));
    }
    debug_assert_eq!(schedule.len(), n_min);

    let mut last = None;
    for f in field_ladder(field, policy) {
        match build_slot_plan(net, &f, 2, &schedule, seed) {
            Ok(result) => return Ok(result),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("field ladder is never empty"))
}

/// Half-min-cut time sharing for two-source networks (or two-terminal ones,
/// via the reverse network): slot 1 multicasts source 1 at rate eta, slot 2
/// multicasts source 2, and every terminal adds componentwise. Yields an
/// (eta, 2) code of rate eta/2.
pub fn scheme_two_source_halfmincut(
    net: &SumNetwork,
    field: &Arc<Alphabet>,
    policy: FieldPolicy,
    seed: u64,
) -> Result<LinearCode, SchemeError> {
    let (m, n) = (net.source_count(), net.terminal_count());
    if m != 2 {
        if n == 2 {
            let reverse = net.reverse_network();
            let code = scheme_two_source_halfmincut(&reverse, field, policy, seed)?;
            let dual = dual_code(&reverse, &code)?;
            if !codec::verify_linear(net, &dual)? {
                return Err(SchemeError::AssemblyNotVerified);
            }
            return Ok(dual);
        }
        return Err(SchemeError::Precondition(format!(
            "needs two sources (or two terminals); got m={m}, n={n}"
        )));
    }
    let eta = net.min_cut_bound()?;
    if eta == 0 {
        return Err(SchemeError::Precondition(
            "some source-terminal pair is disconnected".into(),
        ));
    }
    let mut last = None;
    for f in field_ladder(field, policy) {
        match halfmincut_at_field(net, &f, eta, seed) {
            Ok(code) => return Ok(code),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("field ladder is never empty"))
}

fn halfmincut_at_field(
    net: &SumNetwork,
    field: &Arc<Alphabet>,
    eta: usize,
    seed: u64,
) -> Result<LinearCode, SchemeError> {
    let s1 = net.sources[0].clone();
    let s2 = net.sources[1].clone();
    let m1 = scheme_multicast(net, &s1, eta, field, subseed(seed, 0xa1))?;
    let m2 = scheme_multicast(net, &s2, eta, field, subseed(seed, 0xa2))?;
    let mut code = LinearCode::new(field.clone(), eta, 2);
    // Injections: source i occupies slot i of every edge vector.
    for (slot, (mc, source)) in [(0usize, (&m1, &s1)), (1usize, (&m2, &s2))] {
        for ((s, e), m) in mc.injections() {
            if s != source {
                continue;
            }
            let mut inj = FMatrix::zeros(field.clone(), eta, 2);
            for r in 0..eta {
                inj.set(r, slot, m.get(r, 0));
            }
            code.set_injection(s, e, inj)?;
        }
    }
    // Transitions: diagonal over the two slots.
    let mut transitions: BTreeMap<(String, String), FMatrix> = BTreeMap::new();
    for (slot, mc) in [(0usize, &m1), (1usize, &m2)] {
        for ((from, to), m) in mc.transitions() {
            let entry = transitions
                .entry((from.clone(), to.clone()))
                .or_insert_with(|| FMatrix::zeros(field.clone(), 2, 2));
            entry.set(slot, slot, m.get(0, 0));
        }
    }
    for ((from, to), m) in transitions {
        code.set_transition(&from, &to, m)?;
    }
    // Decoders: stack the two multicast decoders; the terminal output is
    // the componentwise sum of the two recovered blocks.
    let mut decodings: BTreeMap<(String, String), FMatrix> = BTreeMap::new();
    for (slot, mc) in [(0usize, &m1), (1usize, &m2)] {
        for ((t, e), m) in mc.decodings() {
            let entry = decodings
                .entry((t.clone(), e.clone()))
                .or_insert_with(|| FMatrix::zeros(field.clone(), 2, eta));
            for c in 0..eta {
                entry.set(slot, c, m.get(0, c));
            }
        }
    }
    for ((t, e), m) in decodings {
        code.set_decoding(&t, &e, m)?;
    }
    if !codec::verify_linear(net, &code)? {
        return Err(SchemeError::AssemblyNotVerified);
    }
    Ok(code)
}
