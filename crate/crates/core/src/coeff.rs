//! Exact complex-rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A complex number whose real and imaginary parts are arbitrary-precision
/// rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coeff(Complex<BigRational>);

impl Coeff {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Coeff(Complex::new(re, im))
    }

    pub fn zero() -> Self {
        Coeff(Complex::new(BigRational::zero(), BigRational::zero()))
    }

    pub fn one() -> Self {
        Coeff::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Coeff::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Coeff::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(re: BigRational) -> Self {
        Coeff::new(re, BigRational::zero())
    }

    pub fn imag(im: BigRational) -> Self {
        Coeff::new(BigRational::zero(), im)
    }

    /// Exact conversion of a finite binary float.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Coeff::real)
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.re.is_one() && self.0.im.is_zero()
    }

    /// True when the leading nonzero part is negative, so printing `-(-c)` reads better.
    pub fn reads_negative(&self) -> bool {
        self.0.re.is_negative() || (self.0.re.is_zero() && self.0.im.is_negative())
    }

    pub fn conj(&self) -> Self {
        Coeff(self.0.conj())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.0.re * &self.0.re + &self.0.im * &self.0.im;
        Some(Coeff::new(&self.0.re / &norm, -(&self.0.im / &norm)))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Coeff::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.0.re.to_f64().unwrap_or(f64::NAN),
            self.0.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::from_int(n)
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        match (re.is_zero(), im.is_zero()) {
            (_, true) => fmt_rational(re, f),
            (true, false) => {
                if im.is_one() {
                    write!(f, "i")
                } else if (-im).is_one() {
                    write!(f, "-i")
                } else {
                    fmt_rational(im, f)?;
                    write!(f, "*i")
                }
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_rational(re, f)?;
                if im.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let mag = im.abs();
                if !mag.is_one() {
                    fmt_rational(&mag, f)?;
                    write!(f, "*")?;
                }
                write!(f, "i)")
            }
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(-self.0)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(-self.0.clone())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Coeff> for &Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                Coeff((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: Coeff) -> Coeff {
                Coeff(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Coeff> for Coeff {
            type Output = Coeff;
            fn $method(self, rhs: &Coeff) -> Coeff {
                Coeff((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div<&Coeff> for &Coeff {
    type Output = Coeff;
    fn div(self, rhs: &Coeff) -> Coeff {
        self * &rhs.inv().expect("division by zero coefficient")
    }
}

impl Div<Coeff> for Coeff {
    type Output = Coeff;
    fn div(self, rhs: Coeff) -> Coeff {
        &self / &rhs
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        self.0 = &self.0 + &rhs.0;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        self.0 = &self.0 - &rhs.0;
    }
}

impl MulAssign<&Coeff> for Coeff {
    fn mul_assign(&mut self, rhs: &Coeff) {
        self.0 = &self.0 * &rhs.0;
    }
}
