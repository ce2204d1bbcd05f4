//! The reverse-network code transform: any verified (k,l) fractional linear
//! solution yields a (k,l) solution of the reverse network at the same rate.
//!
//! The transform is transpose-based: the transition coefficient of a
//! reversed edge pair is the transpose of the original coefficient for the
//! pair read the other way around, injections of the reverse sources (the
//! original terminals) are transposed decoding matrices, and decodings of
//! the reverse terminals (the original sources) are transposed injections.
//! Because the correctness of that recipe is not taken on faith, every dual
//! is re-verified before it is returned; a failure aborts loudly instead of
//! handing out an unverified code.

use serde::Serialize;
use thiserror::Error;

use crate::codec::{self, CodecError, LinearCode, Rate};
use crate::netgraph::SumNetwork;

#[derive(Debug, Error)]
pub enum DualityError {
    #[error("input code does not verify on its network")]
    InputNotVerified,
    #[error("dual code failed re-verification; the transform is faulty")]
    DualVerificationFailed,
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// Builds the dual of a verified linear code on `reverse_network(net)`.
/// The result has the same (k,l) and is re-verified before being returned.
pub fn dual_code(net: &SumNetwork, code: &LinearCode) -> Result<LinearCode, DualityError> {
    if !codec::verify_linear(net, code)? {
        return Err(DualityError::InputNotVerified);
    }
    let reverse = net.reverse_network();
    let mut dual = LinearCode::new(code.field().clone(), code.k, code.l);
    // Reversed pair (e', e) at the shared node: beta = alpha(e, e')^T.
    for ((from, to), m) in code.transitions() {
        dual.set_transition(to, from, m.transpose())?;
    }
    // Reverse sources are the original terminals.
    for ((terminal, edge), m) in code.decodings() {
        dual.set_injection(terminal, edge, m.transpose())?;
    }
    // Reverse terminals are the original sources.
    for ((source, edge), m) in code.injections() {
        dual.set_decoding(source, edge, m.transpose())?;
    }
    if !codec::verify_linear(&reverse, &dual)? {
        return Err(DualityError::DualVerificationFailed);
    }
    Ok(dual)
}

/// Per-rate confirmation that a rate achieved on the original network is
/// also achieved on the reverse network (the mechanically checkable
/// direction of the reverse-capacity equality).
#[derive(Debug, Clone, Serialize)]
pub struct TransferEntry {
    pub rate: Rate,
    pub confirmed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub network: String,
    pub entries: Vec<TransferEntry>,
}

/// For each verified code, constructs its dual and confirms the same rate on
/// the reverse network.
pub fn linear_capacity_transfer_check(
    net: &SumNetwork,
    codes: &[LinearCode],
) -> Result<TransferReport, DualityError> {
    let mut entries = Vec::with_capacity(codes.len());
    for code in codes {
        let dual = dual_code(net, code)?;
        entries.push(TransferEntry {
            rate: code.rate(),
            confirmed: dual.rate() == code.rate(),
        });
    }
    Ok(TransferReport { network: net.name.clone(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Alphabet;
    use crate::catalog;
    use crate::codec::Code;
    use crate::search::{search_random_linear, SearchStatus};

    fn butterfly_multicast() -> (SumNetwork, LinearCode) {
        let net = catalog::butterfly();
        let field = Alphabet::field(2, 1).unwrap();
        let outcome = search_random_linear(&net, &field, 2, 1, 4096, 11, 1).unwrap();
        assert_eq!(outcome.status, SearchStatus::Found);
        let Some(Code::Linear(code)) = outcome.witness else {
            panic!("expected linear witness");
        };
        (net, code)
    }

    #[test]
    fn dual_of_butterfly_multicast_solves_reverse() {
        let (net, code) = butterfly_multicast();
        let dual = dual_code(&net, &code).unwrap();
        assert_eq!((dual.k, dual.l), (2, 1));
        assert!(codec::verify_linear(&net.reverse_network(), &dual).unwrap());
    }

    #[test]
    fn dual_dual_verifies_on_original() {
        let (net, code) = butterfly_multicast();
        let dual = dual_code(&net, &code).unwrap();
        let back = dual_code(&net.reverse_network(), &dual).unwrap();
        assert_eq!((back.k, back.l), (code.k, code.l));
        assert!(codec::verify_linear(&net, &back).unwrap());
    }

    #[test]
    fn dual_rejects_unverified_input() {
        let net = catalog::chain();
        let field = Alphabet::field(2, 1).unwrap();
        let code = LinearCode::new(field, 1, 1);
        assert!(matches!(dual_code(&net, &code), Err(DualityError::InputNotVerified)));
    }

    #[test]
    fn transfer_check_confirms_rates() {
        let (net, code) = butterfly_multicast();
        let report = linear_capacity_transfer_check(&net, &[code]).unwrap();
        assert!(report.entries.iter().all(|e| e.confirmed));
        assert_eq!(report.entries[0].rate, Rate::new(2, 1));
    }

    #[test]
    fn transfer_check_one_edge_net() {
        let net = SumNetwork::new("one", &["s", "t"], &[("s-t", "s", "t")], &["s"], &["t"]);
        let field = Alphabet::field(2, 1).unwrap();
        let outcome = search_random_linear(&net, &field, 1, 1, 64, 0, 1).unwrap();
        let Some(Code::Linear(code)) = outcome.witness else {
            panic!("expected witness");
        };
        let report = linear_capacity_transfer_check(&net, &[code]).unwrap();
        assert!(report.entries[0].confirmed);
    }
}
