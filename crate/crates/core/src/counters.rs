//! Per-run tallies of primitive operations.

use std::fmt;
use std::ops::AddAssign;

/// One countable event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    PkeEnc,
    PkeDec,
    OtsGen,
    OtsSign,
    OtsVerify,
    SigSign,
    SigVerify,
    SymEnc,
    SymDec,
    /// A decrypted component whose header equalled the trusted broadcaster
    /// key (improved scheme only).
    HeaderMatch,
}

impl Op {
    pub const ALL: [Op; 10] = [
        Op::PkeEnc,
        Op::PkeDec,
        Op::OtsGen,
        Op::OtsSign,
        Op::OtsVerify,
        Op::SigSign,
        Op::SigVerify,
        Op::SymEnc,
        Op::SymDec,
        Op::HeaderMatch,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::PkeEnc => "pke_enc",
            Op::PkeDec => "pke_dec",
            Op::OtsGen => "ots_gen",
            Op::OtsSign => "ots_sign",
            Op::OtsVerify => "ots_verify",
            Op::SigSign => "sig_sign",
            Op::SigVerify => "sig_verify",
            Op::SymEnc => "sym_enc",
            Op::SymDec => "sym_dec",
            Op::HeaderMatch => "header_match",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Counts only ever go up; the only way back to zero is [`OpCounters::reset`]
/// between runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCounters {
    counts: [u64; Op::ALL.len()],
}

impl OpCounters {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn record(&mut self, op: Op) {
        self.counts[op.index()] += 1;
    }

    pub fn get(&self, op: Op) -> u64 {
        self.counts[op.index()]
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }

    pub fn pke_enc(&self) -> u64 {
        self.get(Op::PkeEnc)
    }
    pub fn pke_dec(&self) -> u64 {
        self.get(Op::PkeDec)
    }
    pub fn ots_gen(&self) -> u64 {
        self.get(Op::OtsGen)
    }
    pub fn ots_sign(&self) -> u64 {
        self.get(Op::OtsSign)
    }
    pub fn ots_verify(&self) -> u64 {
        self.get(Op::OtsVerify)
    }
    pub fn sig_sign(&self) -> u64 {
        self.get(Op::SigSign)
    }
    pub fn sig_verify(&self) -> u64 {
        self.get(Op::SigVerify)
    }
    pub fn sym_enc(&self) -> u64 {
        self.get(Op::SymEnc)
    }
    pub fn sym_dec(&self) -> u64 {
        self.get(Op::SymDec)
    }
    pub fn header_match(&self) -> u64 {
        self.get(Op::HeaderMatch)
    }

    pub fn is_zero(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.counts.iter_mut().zip(rhs.counts) {
            *a += b;
        }
    }
}

impl fmt::Display for OpCounters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for op in Op::ALL {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}={}", op.name(), self.get(op))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_and_reset() {
        let mut c = OpCounters::new();
        c.record(Op::PkeDec);
        c.record(Op::PkeDec);
        c.record(Op::OtsVerify);
        assert_eq!(c.pke_dec(), 2);
        assert_eq!(c.ots_verify(), 1);
        assert_eq!(c.sig_verify(), 0);
        c.reset();
        assert!(c.is_zero());
    }

    #[test]
    fn add_assign_is_pointwise() {
        let mut a = OpCounters::new();
        a.record(Op::SymDec);
        let mut b = OpCounters::new();
        b.record(Op::SymDec);
        b.record(Op::HeaderMatch);
        a += b;
        assert_eq!(a.sym_dec(), 2);
        assert_eq!(a.header_match(), 1);
    }

    #[test]
    fn display_lists_every_counter() {
        let text = OpCounters::new().to_string();
        for op in Op::ALL {
            assert!(text.contains(&format!("{}=0", op.name())));
        }
    }
}
