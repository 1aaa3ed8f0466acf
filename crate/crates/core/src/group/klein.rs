//! Normal forms for the Klein bottle group `<a, b | a b a^-1 b>`.
//!
//! Every element is uniquely `a^m b^n`; multiplication twists the second
//! coordinate: `(m1, n1) * (m2, n2) = (m1 + m2, (-1)^m2 * n1 + n2)`.

use std::fmt;

/// The pair `(m, n)` standing for `a^m b^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KleinNf {
    pub m: i64,
    pub n: i64,
}

impl KleinNf {
    pub fn new(m: i64, n: i64) -> KleinNf {
        KleinNf { m, n }
    }

    pub fn identity() -> KleinNf {
        KleinNf { m: 0, n: 0 }
    }

    pub fn is_identity(self) -> bool {
        self.m == 0 && self.n == 0
    }
}

fn sign_pow(m: i64) -> i64 {
    if m.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn klein_mul(x: KleinNf, y: KleinNf) -> KleinNf {
    KleinNf {
        m: x.m + y.m,
        n: sign_pow(y.m) * x.n + y.n,
    }
}

pub fn klein_inv(x: KleinNf) -> KleinNf {
    KleinNf {
        m: -x.m,
        n: -sign_pow(x.m) * x.n,
    }
}

impl fmt::Display for KleinNf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m, self.n)
    }
}
