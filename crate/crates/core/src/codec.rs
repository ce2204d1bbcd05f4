//! Fractional network codes and their verification.
//!
//! A (k,l) fractional code blocks k source symbols per source and puts an
//! l-symbol vector on every edge per use. Linear codes are held as sparse
//! maps of local coefficient matrices (missing entries are zero); general
//! codes are explicit function tables. Verification of linear codes is
//! purely algebraic; the table path exists as an independent cross-check.
//!
//! Conventions, also used by the file formats:
//! - messages are row vectors; an edge carries `sum_i X_i * A[i,e]` where
//!   `A` is the global transfer map;
//! - the inputs of an edge or decoding function are the values of the
//!   in-edges of its tail (resp. terminal) in network edge-list order;
//! - a vector in `G^r` is indexed mixed-radix with component 0 least
//!   significant.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, Alphabet, AlphabetSpec, Elem, FMatrix};
use crate::netgraph::{NetError, SumNetwork};

/// Cap on entries of a single function table.
pub const TABLE_BUDGET: usize = 1 << 20;
/// Cap on the number of source tuples enumerated by [`verify_table`].
pub const ENUM_BUDGET: u128 = 1 << 24;

#[derive(Debug, Error)]
pub enum CodecError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("network is not well formed: {0}")]
    InvalidNetwork(String),
    #[error("code does not bind to the network: {0}")]
    Binding(String),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("enumeration budget exceeded: needs {required} against budget {budget}")]
    Budget { required: u128, budget: u128 },
    #[error("malformed code document: {0}")]
    Format(String),
}

fn ensure_valid(net: &SumNetwork) -> Result<(), CodecError> {
    let violations = net.validate();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CodecError::InvalidNetwork(
            violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ))
    }
}

/// A rate k/l held as an exactly reduced rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rate {
    num: u64,
    den: u64,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Rate {
    pub fn new(num: u64, den: u64) -> Rate {
        assert!(den > 0, "rate denominator must be positive");
        if num == 0 {
            return Rate { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        Rate { num: num / g, den: den / g }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }
}

impl PartialOrd for Rate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rate {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let left = self.num as u128 * other.den as u128;
        let right = other.num as u128 * self.den as u128;
        left.cmp(&right)
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| e.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let den = parse(d)?;
                if den == 0 {
                    return Err("zero denominator".into());
                }
                Ok(Rate::new(parse(n)?, den))
            }
            None => Ok(Rate::new(parse(s)?, 1)),
        }
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rate::from_str(&s).map_err(D::Error::custom)
    }
}

/// A (k,l) fractional linear code over a field, bound to a network by edge
/// and node ids. Coefficient maps are sparse; absent entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCode {
    pub k: usize,
    pub l: usize,
    field: Arc<Alphabet>,
    /// (source id, out-edge id) -> k x l.
    injection: BTreeMap<(String, String), FMatrix>,
    /// (in-edge id, out-edge id at the same node) -> l x l.
    transition: BTreeMap<(String, String), FMatrix>,
    /// (terminal id, in-edge id) -> l x k.
    decoding: BTreeMap<(String, String), FMatrix>,
}

impl LinearCode {
    pub fn new(field: Arc<Alphabet>, k: usize, l: usize) -> LinearCode {
        assert!(field.is_field(), "linear codes require a field alphabet");
        assert!(k > 0 && l > 0, "k and l must be positive");
        LinearCode {
            k,
            l,
            field,
            injection: BTreeMap::new(),
            transition: BTreeMap::new(),
            decoding: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &Arc<Alphabet> {
        &self.field
    }

    pub fn rate(&self) -> Rate {
        Rate::new(self.k as u64, self.l as u64)
    }

    fn check_matrix(&self, m: &FMatrix, rows: usize, cols: usize) -> Result<(), CodecError> {
        if m.field().spec() != self.field.spec() {
            return Err(CodecError::Algebra(AlgebraError::AlphabetMismatch));
        }
        if m.rows() != rows || m.cols() != cols {
            return Err(CodecError::Shape(format!(
                "expected {rows}x{cols}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }

    pub fn set_injection(&mut self, source: &str, edge: &str, m: FMatrix) -> Result<(), CodecError> {
        self.check_matrix(&m, self.k, self.l)?;
        self.injection.insert((source.to_string(), edge.to_string()), m);
        Ok(())
    }

    pub fn set_transition(&mut self, from: &str, to: &str, m: FMatrix) -> Result<(), CodecError> {
        self.check_matrix(&m, self.l, self.l)?;
        self.transition.insert((from.to_string(), to.to_string()), m);
        Ok(())
    }

    pub fn set_decoding(&mut self, terminal: &str, edge: &str, m: FMatrix) -> Result<(), CodecError> {
        self.check_matrix(&m, self.l, self.k)?;
        self.decoding.insert((terminal.to_string(), edge.to_string()), m);
        Ok(())
    }

    pub fn injection(&self, source: &str, edge: &str) -> Option<&FMatrix> {
        self.injection.get(&(source.to_string(), edge.to_string()))
    }

    pub fn transition(&self, from: &str, to: &str) -> Option<&FMatrix> {
        self.transition.get(&(from.to_string(), to.to_string()))
    }

    pub fn decoding(&self, terminal: &str, edge: &str) -> Option<&FMatrix> {
        self.decoding.get(&(terminal.to_string(), edge.to_string()))
    }

    pub fn injections(&self) -> impl Iterator<Item = (&(String, String), &FMatrix)> {
        self.injection.iter()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (&(String, String), &FMatrix)> {
        self.transition.iter()
    }

    pub fn decodings(&self) -> impl Iterator<Item = (&(String, String), &FMatrix)> {
        self.decoding.iter()
    }

    /// Checks every map key against the network's adjacency structure.
    pub fn check_binding(&self, net: &SumNetwork) -> Result<(), CodecError> {
        for (s, e) in self.injection.keys() {
            if !net.sources.iter().any(|x| x == s) {
                return Err(CodecError::Binding(format!("injection source `{s}` is not a source")));
            }
            match net.edge(e) {
                Some(edge) if edge.tail == *s => {}
                Some(_) => {
                    return Err(CodecError::Binding(format!(
                        "injection edge `{e}` does not leave source `{s}`"
                    )))
                }
                None => return Err(CodecError::Binding(format!("unknown edge `{e}`"))),
            }
        }
        for (from, to) in self.transition.keys() {
            let (Some(fe), Some(te)) = (net.edge(from), net.edge(to)) else {
                return Err(CodecError::Binding(format!(
                    "transition references unknown edge pair ({from}, {to})"
                )));
            };
            if fe.head != te.tail {
                return Err(CodecError::Binding(format!(
                    "transition ({from}, {to}) is not a consecutive edge pair"
                )));
            }
        }
        for (t, e) in self.decoding.keys() {
            if !net.terminals.iter().any(|x| x == t) {
                return Err(CodecError::Binding(format!(
                    "decoding terminal `{t}` is not a terminal"
                )));
            }
            match net.edge(e) {
                Some(edge) if edge.head == *t => {}
                Some(_) => {
                    return Err(CodecError::Binding(format!(
                        "decoding edge `{e}` does not enter terminal `{t}`"
                    )))
                }
                None => return Err(CodecError::Binding(format!("unknown edge `{e}`"))),
            }
        }
        Ok(())
    }
}

/// Global transfer matrices: for each source i and edge e, the k x l map
/// `A[i,e]` with the edge value `y_e = sum_i X_i * A[i,e]`, computed along a
/// topological order of the edges.
pub fn global_transfer(
    net: &SumNetwork,
    code: &LinearCode,
) -> Result<BTreeMap<(String, String), FMatrix>, CodecError> {
    let table = transfer_table(net, code)?;
    let mut out = BTreeMap::new();
    for (si, s) in net.sources.iter().enumerate() {
        for (ei, e) in net.edges.iter().enumerate() {
            out.insert((s.clone(), e.id.clone()), table[si * net.edges.len() + ei].clone());
        }
    }
    Ok(out)
}

/// Dense transfer table indexed `[source * edge_count + edge]`.
pub(crate) fn transfer_table(
    net: &SumNetwork,
    code: &LinearCode,
) -> Result<Vec<FMatrix>, CodecError> {
    ensure_valid(net)?;
    code.check_binding(net)?;
    let topo = net.topology()?;
    let ecount = net.edges.len();
    let zero = FMatrix::zeros(code.field().clone(), code.k, code.l);
    let mut table = vec![zero; net.sources.len() * ecount];
    for &e in &topo.topo_edges {
        let tail = topo.edge_tail[e];
        for (si, &snode) in topo.source_idx.iter().enumerate() {
            if tail == snode {
                if let Some(m) = code.injection(&net.sources[si], &net.edges[e].id) {
                    table[si * ecount + e] = m.clone();
                }
            } else {
                let mut acc = FMatrix::zeros(code.field().clone(), code.k, code.l);
                for &f in &topo.in_edges[tail] {
                    if let Some(t) = code.transition(&net.edges[f].id, &net.edges[e].id) {
                        acc = acc.add(&table[si * ecount + f].matmul(t)?)?;
                    }
                }
                table[si * ecount + e] = acc;
            }
        }
    }
    Ok(table)
}

/// True iff every terminal recovers the componentwise sum of all source
/// blocks for every message assignment: for each terminal t and source i,
/// `sum_{e in In(t)} A[i,e] * D[t,e] = I_k`.
pub fn verify_linear(net: &SumNetwork, code: &LinearCode) -> Result<bool, CodecError> {
    let table = transfer_table(net, code)?;
    let topo = net.topology()?;
    let ecount = net.edges.len();
    let identity = FMatrix::identity(code.field().clone(), code.k);
    for (ti, t) in net.terminals.iter().enumerate() {
        for si in 0..net.sources.len() {
            let mut acc = FMatrix::zeros(code.field().clone(), code.k, code.k);
            for &e in &topo.in_edges[topo.terminal_idx[ti]] {
                if let Some(d) = code.decoding(t, &net.edges[e].id) {
                    acc = acc.add(&table[si * ecount + e].matmul(d)?)?;
                }
            }
            if acc != identity {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A (k,l) code given by explicit per-edge function tables and per-terminal
/// decoding tables. Tables map mixed-radix input indices to output indices.
#[derive(Debug, Clone, PartialEq)]
pub struct TableCode {
    pub k: usize,
    pub l: usize,
    alphabet: Arc<Alphabet>,
    edge_tables: BTreeMap<String, Vec<u64>>,
    decoding_tables: BTreeMap<String, Vec<u64>>,
}

impl TableCode {
    pub fn new(alphabet: Arc<Alphabet>, k: usize, l: usize) -> TableCode {
        assert!(k > 0 && l > 0, "k and l must be positive");
        TableCode {
            k,
            l,
            alphabet,
            edge_tables: BTreeMap::new(),
            decoding_tables: BTreeMap::new(),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rate(&self) -> Rate {
        Rate::new(self.k as u64, self.l as u64)
    }

    pub fn set_edge_table(&mut self, edge: &str, table: Vec<u64>) {
        self.edge_tables.insert(edge.to_string(), table);
    }

    pub fn set_decoding_table(&mut self, terminal: &str, table: Vec<u64>) {
        self.decoding_tables.insert(terminal.to_string(), table);
    }

    pub fn edge_table(&self, edge: &str) -> Option<&Vec<u64>> {
        self.edge_tables.get(edge)
    }

    pub fn decoding_table(&self, terminal: &str) -> Option<&Vec<u64>> {
        self.decoding_tables.get(terminal)
    }

    pub fn edge_tables(&self) -> impl Iterator<Item = (&String, &Vec<u64>)> {
        self.edge_tables.iter()
    }

    pub fn decoding_tables(&self) -> impl Iterator<Item = (&String, &Vec<u64>)> {
        self.decoding_tables.iter()
    }

    /// Expected table length for each edge and terminal, and entry bounds.
    pub fn check_binding(&self, net: &SumNetwork) -> Result<(), CodecError> {
        let q = self.alphabet.order() as u128;
        let ql = q.checked_pow(self.l as u32).ok_or(CodecError::Budget {
            required: u128::MAX,
            budget: TABLE_BUDGET as u128,
        })?;
        for e in &net.edges {
            let is_source_edge = net.sources.contains(&e.tail);
            let domain: u128 = if is_source_edge {
                q.pow(self.k as u32)
            } else {
                let indeg = net.in_edges_of(&e.tail).len() as u32;
                ql.checked_pow(indeg).ok_or(CodecError::Budget {
                    required: u128::MAX,
                    budget: TABLE_BUDGET as u128,
                })?
            };
            if domain > TABLE_BUDGET as u128 {
                return Err(CodecError::Budget { required: domain, budget: TABLE_BUDGET as u128 });
            }
            let table = self
                .edge_tables
                .get(&e.id)
                .ok_or_else(|| CodecError::Binding(format!("edge `{}` has no table", e.id)))?;
            if table.len() as u128 != domain {
                return Err(CodecError::Binding(format!(
                    "edge `{}` table has {} entries, expected {domain}",
                    e.id,
                    table.len()
                )));
            }
            if table.iter().any(|&v| v as u128 >= ql) {
                return Err(CodecError::Binding(format!(
                    "edge `{}` table value out of range",
                    e.id
                )));
            }
        }
        let qk = q.pow(self.k as u32);
        for t in &net.terminals {
            let domain = ql
                .checked_pow(net.in_edges_of(t).len() as u32)
                .ok_or(CodecError::Budget { required: u128::MAX, budget: TABLE_BUDGET as u128 })?;
            if domain > TABLE_BUDGET as u128 {
                return Err(CodecError::Budget { required: domain, budget: TABLE_BUDGET as u128 });
            }
            let table = self
                .decoding_tables
                .get(t)
                .ok_or_else(|| CodecError::Binding(format!("terminal `{t}` has no table")))?;
            if table.len() as u128 != domain {
                return Err(CodecError::Binding(format!(
                    "terminal `{t}` table has {} entries, expected {domain}",
                    table.len()
                )));
            }
            if table.iter().any(|&v| v as u128 >= qk) {
                return Err(CodecError::Binding(format!(
                    "terminal `{t}` table value out of range"
                )));
            }
        }
        Ok(())
    }
}

/// True iff for every source tuple the decoding tables reproduce the
/// componentwise sum at every terminal. Enumerates all `|G|^(k*m)` tuples;
/// errors when that exceeds [`ENUM_BUDGET`].
pub fn verify_table(net: &SumNetwork, code: &TableCode) -> Result<bool, CodecError> {
    ensure_valid(net)?;
    code.check_binding(net)?;
    let topo = net.topology()?;
    let q = code.alphabet.order();
    let m = net.sources.len();
    let space = (q as u128).pow((code.k * m) as u32);
    if space > ENUM_BUDGET {
        return Err(CodecError::Budget { required: space, budget: ENUM_BUDGET });
    }
    let qk = (q as u64).pow(code.k as u32);
    let ql = (q as u64).pow(code.l as u32);
    let ecount = net.edges.len();
    let mut vals = vec![0u64; ecount];
    let mut blocks = vec![0u64; m];
    for tuple in 0..space {
        let mut rest = tuple;
        for b in blocks.iter_mut() {
            *b = (rest % qk as u128) as u64;
            rest /= qk as u128;
        }
        // Componentwise sum of the source blocks.
        let mut sum = 0u64;
        for pos in (0..code.k).rev() {
            let mut acc: Elem = 0;
            for &b in &blocks {
                let sym = (b / (q as u64).pow(pos as u32)) % q as u64;
                acc = code.alphabet.add(acc, sym as Elem);
            }
            sum = sum * q as u64 + acc as u64;
        }
        for &e in &topo.topo_edges {
            let tail = topo.edge_tail[e];
            let table = &code.edge_tables[&net.edges[e].id];
            let idx = match net.sources.iter().position(|s| *s == net.edges[e].tail) {
                Some(si) => blocks[si],
                None => {
                    let mut ix = 0u64;
                    for (j, &f) in topo.in_edges[tail].iter().enumerate() {
                        ix += vals[f] * ql.pow(j as u32);
                    }
                    ix
                }
            };
            vals[e] = table[idx as usize];
        }
        for (ti, t) in net.terminals.iter().enumerate() {
            let mut ix = 0u64;
            for (j, &f) in topo.in_edges[topo.terminal_idx[ti]].iter().enumerate() {
                ix += vals[f] * ql.pow(j as u32);
            }
            if code.decoding_tables[t][ix as usize] != sum {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Multiplies a row vector of symbols by a matrix over the code's field.
fn row_times(field: &Alphabet, row: &[Elem], m: &FMatrix) -> Vec<Elem> {
    let mut out = vec![0 as Elem; m.cols()];
    for (r, &x) in row.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (c, o) in out.iter_mut().enumerate() {
            *o = field.add(*o, field.mul(x, m.get(r, c)));
        }
    }
    out
}

fn decompose(mut x: u64, q: u64, parts: usize) -> Vec<Elem> {
    (0..parts)
        .map(|_| {
            let v = (x % q) as Elem;
            x /= q;
            v
        })
        .collect()
}

fn compose(parts: &[Elem], q: u64) -> u64 {
    parts.iter().rev().fold(0u64, |acc, &p| acc * q + p as u64)
}

/// Tabulates a linear code as a [`TableCode`]. Verifying the result with
/// [`verify_table`] always agrees with [`verify_linear`] on the input.
pub fn linearize(net: &SumNetwork, code: &LinearCode) -> Result<TableCode, CodecError> {
    ensure_valid(net)?;
    code.check_binding(net)?;
    let field = code.field();
    let q = field.order() as u64;
    let qk = (q as u128).pow(code.k as u32);
    let ql = (q as u128).pow(code.l as u32);
    if qk > TABLE_BUDGET as u128 {
        return Err(CodecError::Budget { required: qk, budget: TABLE_BUDGET as u128 });
    }
    let mut out = TableCode::new(field.clone(), code.k, code.l);
    for e in &net.edges {
        let is_source = net.sources.iter().position(|s| *s == e.tail);
        let table = match is_source {
            Some(_) => {
                let inj = code.injection(&e.tail, &e.id);
                (0..qk as u64)
                    .map(|x| {
                        let row = decompose(x, q, code.k);
                        let y = match inj {
                            Some(m) => row_times(field, &row, m),
                            None => vec![0; code.l],
                        };
                        compose(&y, q)
                    })
                    .collect()
            }
            None => {
                let ins = net.in_edges_of(&e.tail);
                let domain = ql.checked_pow(ins.len() as u32).ok_or(CodecError::Budget {
                    required: u128::MAX,
                    budget: TABLE_BUDGET as u128,
                })?;
                if domain > TABLE_BUDGET as u128 {
                    return Err(CodecError::Budget {
                        required: domain,
                        budget: TABLE_BUDGET as u128,
                    });
                }
                (0..domain as u64)
                    .map(|ix| {
                        let mut acc = vec![0 as Elem; code.l];
                        let mut rest = ix;
                        for f in &ins {
                            let y = decompose(rest % ql as u64, q, code.l);
                            rest /= ql as u64;
                            if let Some(t) = code.transition(&f.id, &e.id) {
                                let part = row_times(field, &y, t);
                                for (a, b) in acc.iter_mut().zip(part) {
                                    *a = field.add(*a, b);
                                }
                            }
                        }
                        compose(&acc, q)
                    })
                    .collect()
            }
        };
        out.set_edge_table(&e.id, table);
    }
    for t in &net.terminals {
        let ins = net.in_edges_of(t);
        let domain = ql.checked_pow(ins.len() as u32).ok_or(CodecError::Budget {
            required: u128::MAX,
            budget: TABLE_BUDGET as u128,
        })?;
        if domain > TABLE_BUDGET as u128 {
            return Err(CodecError::Budget { required: domain, budget: TABLE_BUDGET as u128 });
        }
        let table = (0..domain as u64)
            .map(|ix| {
                let mut acc = vec![0 as Elem; code.k];
                let mut rest = ix;
                for f in &ins {
                    let y = decompose(rest % ql as u64, q, code.l);
                    rest /= ql as u64;
                    if let Some(d) = code.decoding(t, &f.id) {
                        let part = row_times(field, &y, d);
                        for (a, b) in acc.iter_mut().zip(part) {
                            *a = field.add(*a, b);
                        }
                    }
                }
                compose(&acc, q)
            })
            .collect();
        out.set_decoding_table(t, table);
    }
    Ok(out)
}

/// Either representation of a code, as stored in code files.
#[derive(Debug, Clone, PartialEq)]
pub enum Code {
    Linear(LinearCode),
    Table(TableCode),
}

impl Code {
    pub fn rate(&self) -> Rate {
        match self {
            Code::Linear(c) => c.rate(),
            Code::Table(c) => c.rate(),
        }
    }

    pub fn verify(&self, net: &SumNetwork) -> Result<bool, CodecError> {
        match self {
            Code::Linear(c) => verify_linear(net, c),
            Code::Table(c) => verify_table(net, c),
        }
    }

    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("code serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Code, CodecError> {
        serde_json::from_str(text).map_err(|e| CodecError::Format(e.to_string()))
    }
}

impl Serialize for Code {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CodeFile::from_code(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Code {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = CodeFile::deserialize(deserializer)?;
        file.into_code().map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InjectionEntry {
    source: String,
    edge: String,
    matrix: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionEntry {
    from: String,
    to: String,
    matrix: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecodingEntry {
    terminal: String,
    edge: String,
    matrix: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeTableEntry {
    edge: String,
    table: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TerminalTableEntry {
    terminal: String,
    table: Vec<u64>,
}

/// Code interchange document.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum CodeFile {
    Linear {
        k: usize,
        l: usize,
        alphabet: AlphabetSpec,
        injection: Vec<InjectionEntry>,
        transition: Vec<TransitionEntry>,
        decoding: Vec<DecodingEntry>,
    },
    Table {
        k: usize,
        l: usize,
        alphabet: AlphabetSpec,
        edges: Vec<EdgeTableEntry>,
        decodings: Vec<TerminalTableEntry>,
    },
}

fn matrix_rows(m: &FMatrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c) as u64).collect())
        .collect()
}

impl CodeFile {
    fn from_code(code: &Code) -> CodeFile {
        match code {
            Code::Linear(c) => CodeFile::Linear {
                k: c.k,
                l: c.l,
                alphabet: c.field().spec().clone(),
                injection: c
                    .injections()
                    .map(|((s, e), m)| InjectionEntry {
                        source: s.clone(),
                        edge: e.clone(),
                        matrix: matrix_rows(m),
                    })
                    .collect(),
                transition: c
                    .transitions()
                    .map(|((f, t), m)| TransitionEntry {
                        from: f.clone(),
                        to: t.clone(),
                        matrix: matrix_rows(m),
                    })
                    .collect(),
                decoding: c
                    .decodings()
                    .map(|((t, e), m)| DecodingEntry {
                        terminal: t.clone(),
                        edge: e.clone(),
                        matrix: matrix_rows(m),
                    })
                    .collect(),
            },
            Code::Table(c) => CodeFile::Table {
                k: c.k,
                l: c.l,
                alphabet: c.alphabet().spec().clone(),
                edges: c
                    .edge_tables()
                    .map(|(e, t)| EdgeTableEntry { edge: e.clone(), table: t.clone() })
                    .collect(),
                decodings: c
                    .decoding_tables()
                    .map(|(term, t)| TerminalTableEntry {
                        terminal: term.clone(),
                        table: t.clone(),
                    })
                    .collect(),
            },
        }
    }

    fn into_code(self) -> Result<Code, CodecError> {
        match self {
            CodeFile::Linear { k, l, alphabet, injection, transition, decoding } => {
                let field = Alphabet::from_spec(&alphabet)?;
                if !field.is_field() {
                    return Err(CodecError::Format("linear codes require a field".into()));
                }
                if k == 0 || l == 0 {
                    return Err(CodecError::Format("k and l must be positive".into()));
                }
                let mut code = LinearCode::new(field.clone(), k, l);
                let to_matrix = |rows: &Vec<Vec<u64>>| FMatrix::from_rows(field.clone(), rows);
                for entry in injection {
                    code.set_injection(&entry.source, &entry.edge, to_matrix(&entry.matrix)?)?;
                }
                for entry in transition {
                    code.set_transition(&entry.from, &entry.to, to_matrix(&entry.matrix)?)?;
                }
                for entry in decoding {
                    code.set_decoding(&entry.terminal, &entry.edge, to_matrix(&entry.matrix)?)?;
                }
                Ok(Code::Linear(code))
            }
            CodeFile::Table { k, l, alphabet, edges, decodings } => {
                if k == 0 || l == 0 {
                    return Err(CodecError::Format("k and l must be positive".into()));
                }
                let alphabet = Alphabet::from_spec(&alphabet)?;
                let mut code = TableCode::new(alphabet, k, l);
                for entry in edges {
                    code.set_edge_table(&entry.edge, entry.table);
                }
                for entry in decodings {
                    code.set_decoding_table(&entry.terminal, entry.table);
                }
                Ok(Code::Table(code))
            }
        }
    }
}
