//! Simple algebraic extensions Q[t]/(m(t)) for irreducible m.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{CoeffDisplay, Rational};
use super::univariate::UniPoly;

#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: UniPoly,
}

impl NumberField {
    /// `modulus` must be irreducible over Q; it is made monic.
    pub fn new(modulus: &UniPoly) -> Arc<Self> {
        Arc::new(NumberField { modulus: modulus.monic() })
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn generator(self: &Arc<Self>) -> NfElem {
        self.element(UniPoly::x())
    }

    pub fn element(self: &Arc<Self>, value: UniPoly) -> NfElem {
        NfElem {
            value: value.rem(&self.modulus),
            field: Some(self.clone()),
        }
    }
}

/// Element of a number field. Rational constants may omit the field; they
/// pick it up from the other operand.
#[derive(Clone, Debug)]
pub struct NfElem {
    value: UniPoly,
    field: Option<Arc<NumberField>>,
}

impl NfElem {
    pub fn rational(r: Rational) -> Self {
        NfElem { value: UniPoly::constant(r), field: None }
    }

    pub fn value(&self) -> &UniPoly {
        &self.value
    }

    fn join(a: &Self, b: &Self) -> Option<Arc<NumberField>> {
        a.field.clone().or_else(|| b.field.clone())
    }

    fn reduced(value: UniPoly, field: Option<Arc<NumberField>>) -> Self {
        match &field {
            Some(f) if value.degree() >= f.degree() => NfElem {
                value: value.rem(&f.modulus),
                field,
            },
            _ => NfElem { value, field },
        }
    }

    pub fn inverse(&self) -> Self {
        assert!(!self.value.is_zero(), "inverse of zero");
        if self.value.degree() == 0 {
            return NfElem {
                value: UniPoly::constant(Rational::one() / self.value.lc()),
                field: self.field.clone(),
            };
        }
        let field = self.field.as_ref().expect("non-constant element carries its field");
        let (g, s, _) = self.value.ext_gcd(&field.modulus);
        debug_assert_eq!(g, UniPoly::one());
        Self::reduced(s, self.field.clone())
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Zero for NfElem {
    fn zero() -> Self {
        NfElem { value: UniPoly::zero(), field: None }
    }
    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl One for NfElem {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Add for NfElem {
    type Output = NfElem;
    fn add(self, o: NfElem) -> NfElem {
        let field = Self::join(&self, &o);
        NfElem { value: self.value.add(&o.value), field }
    }
}

impl Sub for NfElem {
    type Output = NfElem;
    fn sub(self, o: NfElem) -> NfElem {
        let field = Self::join(&self, &o);
        NfElem { value: self.value.sub(&o.value), field }
    }
}

impl Mul for NfElem {
    type Output = NfElem;
    fn mul(self, o: NfElem) -> NfElem {
        let field = Self::join(&self, &o);
        Self::reduced(self.value.mul(&o.value), field)
    }
}

impl Div for NfElem {
    type Output = NfElem;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: NfElem) -> NfElem {
        let field = Self::join(&self, &o);
        let inv = NfElem { value: o.value, field: field.clone() }.inverse();
        Self::reduced(self.value.mul(&inv.value), field)
    }
}

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem { value: UniPoly::zero().sub(&self.value), field: self.field }
    }
}

impl CoeffDisplay for NfElem {
    fn render(&self) -> (bool, String, bool) {
        if self.value.degree() == 0 {
            return self.value.lc().render();
        }
        (false, format!("({})", self.value), false)
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
