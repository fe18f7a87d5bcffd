use super::poly::ZPoly;
use super::{Field, ScalarError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// An element of Q(q), kept as a reduced fraction of integer polynomials.
///
/// The denominator is nonzero with positive leading coefficient, numerator
/// and denominator are coprime in `Z[q]` (content included), and zero is
/// `0/1`. Structural equality is therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QRat {
    num: ZPoly,
    den: ZPoly,
}

impl QRat {
    /// Builds `num/den` in canonical form.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return QRat { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        QRat { num, den }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        QRat {
            num: p,
            den: ZPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(ZPoly::constant(BigInt::from(c)))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(ZPoly::q())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = ZPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            QRat {
                num: ZPoly::one(),
                den: m,
            }
        }
    }

    /// `c * q^k`
    pub fn scaled_q_pow(c: i64, k: i64) -> Self {
        Self::q_pow(k).mul(&Self::from_int(c))
    }

    pub fn numer(&self) -> &ZPoly {
        &self.num
    }

    pub fn denom(&self) -> &ZPoly {
        &self.den
    }

    /// If the value is `c * q^k` with integer `c`, return `(c, k)`.
    pub fn as_q_monomial(&self) -> Option<(BigInt, i64)> {
        let (nc, nk) = self.num.as_monomial()?;
        let (dc, dk) = self.den.as_monomial()?;
        if !dc.is_one() {
            return None;
        }
        Some((nc.clone(), nk as i64 - dk as i64))
    }

    /// Is this a Laurent polynomial (denominator a power of q)?
    pub fn is_laurent(&self) -> bool {
        self.den.as_monomial().is_some_and(|(c, _)| c.is_one())
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Ok(QRat { num, den })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.try_inv()?))
    }

    /// Evaluates at a rational point `q0`.
    pub fn specialize(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        if Zero::is_zero(q0) {
            return Err(ScalarError::ZeroSpecialization);
        }
        let d: BigRational = self.den.eval(q0);
        if Zero::is_zero(&d) {
            return Err(ScalarError::Pole {
                denominator: self.den.to_string(),
                at: q0.to_string(),
            });
        }
        let n: BigRational = self.num.eval(q0);
        Ok(n / d)
    }

    /// Total size of the coefficient data; a rough cost measure used by pivot
    /// selection.
    pub fn weight(&self) -> usize {
        self.num.term_count() + self.den.term_count()
    }
}

impl Field for QRat {
    fn zero() -> Self {
        QRat {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    fn one() -> Self {
        Self::from_poly(ZPoly::one())
    }

    fn from_i64(c: i64) -> Self {
        Self::from_int(c)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::canonical(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::canonical(num, self.den.mul(&other.den))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_poly(self.num.mul(&other.num));
        }
        Self::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn neg(&self) -> Self {
        QRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

impl Default for QRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((c, k)) = self.den.as_monomial() {
            if c.is_one() {
                return self.num.write_laurent(f, -(k as i64));
            }
            f.write_str("(")?;
            self.num.write_laurent(f, -(k as i64))?;
            return write!(f, ")/{c}");
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat[{self}]")
    }
}

/// The q-number `(q^n - q^-n)/(q - q^-1)`.
pub fn qnum(n: i64) -> QRat {
    if n == 0 {
        return QRat::zero();
    }
    let q = QRat::q();
    let qi = QRat::q_pow(-1);
    QRat::q_pow(n)
        .sub(&QRat::q_pow(-n))
        .try_div(&q.sub(&qi))
        .expect("q - 1/q is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> ZPoly {
        ZPoly::from_i64s(cs)
    }

    fn frac(n: &[i64], d: &[i64]) -> QRat {
        QRat::new(poly(n), poly(d)).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn inverse_of_q_minus_inverse() {
        // (q^2 - 1)/q  ->  q/(q^2 - 1)
        let x = frac(&[-1, 0, 1], &[0, 1]);
        assert_eq!(x.try_inv().unwrap(), frac(&[0, 1], &[-1, 0, 1]));
    }

    #[test]
    fn arithmetic_examples() {
        let x = frac(&[1, 2], &[3, 0, 1]);
        assert_eq!(x.add(&QRat::zero()), x);
        assert_eq!(
            QRat::from_poly(poly(&[-1, 1])).mul(&QRat::from_poly(poly(&[1, 1]))),
            QRat::from_poly(poly(&[-1, 0, 1]))
        );
        assert!(QRat::zero().try_inv().is_err());
    }

    #[test]
    fn canonical_form_is_unique() {
        // 2(q+1) / (-4(q+1)q)  ==  -1/(2q)
        let x = frac(&[2, 2], &[0, -4, -4]);
        assert_eq!(x.numer(), &poly(&[-1]));
        assert_eq!(x.denom(), &poly(&[0, 2]));
        assert_eq!(QRat::new(poly(&[]), poly(&[0, 3])).unwrap().denom(), &ZPoly::one());
    }

    #[test]
    fn q_numbers() {
        assert_eq!(qnum(1), QRat::one());
        assert_eq!(qnum(0), QRat::zero());
        assert_eq!(qnum(2), frac(&[1, 0, 1], &[0, 1]));
        assert_eq!(qnum(-3), qnum(3).neg());
        for n in -5..=5 {
            let at_one = QRat::specialize(&qnum(n), &rat(1, 1)).unwrap();
            assert_eq!(at_one, rat(n, 1));
        }
    }

    #[test]
    fn specialization() {
        assert_eq!(frac(&[1, 0, 1], &[0, 1]).specialize(&rat(2, 1)).unwrap(), rat(5, 2));
        assert_eq!(QRat::q_pow(-1).specialize(&rat(2, 1)).unwrap(), rat(1, 2));
        let pole = frac(&[1], &[-1, 1]).specialize(&rat(1, 1));
        assert!(matches!(pole, Err(ScalarError::Pole { .. })));
        assert!(matches!(
            QRat::q().specialize(&rat(0, 1)),
            Err(ScalarError::ZeroSpecialization)
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(QRat::q_pow(-2).to_string(), "q^-2");
        assert_eq!(qnum(2).to_string(), "q + q^-1");
        assert_eq!(QRat::q_pow(-1).sub(&QRat::q()).to_string(), "-q + q^-1");
        assert_eq!(frac(&[1], &[-1, 0, 1]).to_string(), "(1)/(q^2 - 1)");
        assert_eq!(frac(&[1], &[0, 2]).to_string(), "(q^-1)/2");
    }
}
