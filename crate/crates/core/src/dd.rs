//! Double-double arithmetic (unevaluated sum of two `f64`s), real and
//! complex, for residuals that cancel catastrophically in working precision.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct DD {
    hi: f64,
    lo: f64,
}

impl DD {
    pub(crate) const ZERO: DD = DD { hi: 0.0, lo: 0.0 };

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for DD {
    fn from(hi: f64) -> Self {
        DD { hi, lo: 0.0 }
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, b: DD) -> DD {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, b: DD) -> DD {
        self + (-b)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, b: DD) -> DD {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, b: DD) -> DD {
        let q1 = self.hi / b.hi;
        let r = self - b * DD::from(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * DD::from(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DD { hi, lo } + DD::from(q3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct CDD {
    pub(crate) re: DD,
    pub(crate) im: DD,
}

impl CDD {
    pub(crate) const ZERO: CDD = CDD {
        re: DD::ZERO,
        im: DD::ZERO,
    };

    pub(crate) fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Leading word and the remainder, both as `Complex64`.
    pub(crate) fn split(self) -> (Complex64, Complex64) {
        let hi = self.to_c64();
        (hi, (self - CDD::from(hi)).to_c64())
    }

    pub(crate) fn from_parts(hi: Complex64, lo: Complex64) -> Self {
        CDD::from(hi) + CDD::from(lo)
    }
}

impl From<f64> for CDD {
    fn from(x: f64) -> Self {
        CDD {
            re: x.into(),
            im: DD::ZERO,
        }
    }
}

impl From<Complex64> for CDD {
    fn from(z: Complex64) -> Self {
        CDD {
            re: z.re.into(),
            im: z.im.into(),
        }
    }
}

impl Add for CDD {
    type Output = CDD;
    fn add(self, b: CDD) -> CDD {
        CDD {
            re: self.re + b.re,
            im: self.im + b.im,
        }
    }
}

impl Sub for CDD {
    type Output = CDD;
    fn sub(self, b: CDD) -> CDD {
        CDD {
            re: self.re - b.re,
            im: self.im - b.im,
        }
    }
}

impl Mul for CDD {
    type Output = CDD;
    fn mul(self, b: CDD) -> CDD {
        CDD {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Div for CDD {
    type Output = CDD;
    fn div(self, b: CDD) -> CDD {
        let den = b.re * b.re + b.im * b.im;
        let num = self
            * CDD {
                re: b.re,
                im: -b.im,
            };
        CDD {
            re: num.re / den,
            im: num.im / den,
        }
    }
}
