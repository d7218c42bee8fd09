//! Flux-charge excitations of the ℝ gauge theory.
//!
//! Flux is stored in units of 2π, so a label `(φ̂, c)` has spin `φ̂·c mod 1`
//! and two labels braid with phase `φ̂c' + φ̂'c mod 1`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{ArithError, PhaseFraction, Surd};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FluxCharge {
    pub flux: Surd,
    pub charge: Surd,
}

impl FluxCharge {
    pub fn new(flux: Surd, charge: Surd) -> Self {
        Self { flux, charge }
    }

    pub fn ints(flux: i64, charge: i64) -> Self {
        Self::new(Surd::int(flux), Surd::int(charge))
    }

    pub fn zero() -> Self {
        Self::ints(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.flux.is_zero() && self.charge.is_zero()
    }

    /// Flux-charge exchange `(φ̂, c) ↦ (c, φ̂)`; preserves spin and braiding.
    pub fn exchange(&self) -> Self {
        Self::new(self.charge.clone(), self.flux.clone())
    }

    /// Discriminant of the field the components live in (1 when rational).
    pub fn discriminant(&self) -> u64 {
        if self.flux.is_rational() {
            self.charge.d()
        } else {
            self.flux.d()
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(Self::new(self.flux.checked_add(&o.flux)?, self.charge.checked_add(&o.charge)?))
    }

    pub fn scale(&self, k: &Surd) -> Result<Self, ArithError> {
        Ok(Self::new(self.flux.checked_mul(k)?, self.charge.checked_mul(k)?))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Self::new(self.flux.scale_int(k), self.charge.scale_int(k))
    }

    pub fn to_vec(&self) -> Vec<Surd> {
        vec![self.flux.clone(), self.charge.clone()]
    }

    pub fn from_slice(v: &[Surd]) -> Self {
        Self::new(v[0].clone(), v[1].clone())
    }

    /// The braiding functional `y ↦ c·φ̂_y + φ̂·c_y` as a coefficient row.
    pub fn braiding_row(&self) -> Vec<Surd> {
        vec![self.charge.clone(), self.flux.clone()]
    }
}

impl Add for &FluxCharge {
    type Output = FluxCharge;
    fn add(self, o: &FluxCharge) -> FluxCharge {
        FluxCharge::new(&self.flux + &o.flux, &self.charge + &o.charge)
    }
}

impl Sub for &FluxCharge {
    type Output = FluxCharge;
    fn sub(self, o: &FluxCharge) -> FluxCharge {
        FluxCharge::new(&self.flux - &o.flux, &self.charge - &o.charge)
    }
}

impl Neg for &FluxCharge {
    type Output = FluxCharge;
    fn neg(self) -> FluxCharge {
        FluxCharge::new(-&self.flux, -&self.charge)
    }
}

impl fmt::Display for FluxCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.flux, self.charge)
    }
}

impl fmt::Debug for FluxCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Unreduced spin `φ̂·c`.
pub fn spin_value(x: &FluxCharge) -> Surd {
    &x.flux * &x.charge
}

pub fn spin(x: &FluxCharge) -> PhaseFraction {
    PhaseFraction::new(spin_value(x))
}

/// Unreduced braiding form `φ̂c' + φ̂'c`; symmetric and bilinear.
pub fn braiding_value(x: &FluxCharge, y: &FluxCharge) -> Surd {
    &x.flux * &y.charge + &y.flux * &x.charge
}

pub fn braiding(x: &FluxCharge, y: &FluxCharge) -> PhaseFraction {
    PhaseFraction::new(braiding_value(x, y))
}

pub fn is_boson(x: &FluxCharge) -> bool {
    spin(x).is_trivial()
}

/// Single discriminant shared by all labels, or the offending pair.
pub fn common_discriminant<'a>(xs: impl IntoIterator<Item = &'a FluxCharge>) -> Result<u64, ArithError> {
    let mut d = 1;
    for x in xs {
        for s in [&x.flux, &x.charge] {
            if !s.is_rational() {
                if d != 1 && d != s.d() {
                    return Err(ArithError::SurdMismatch(d, s.d()));
                }
                d = s.d();
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(a: &str, b: &str) -> FluxCharge {
        FluxCharge::new(a.parse().unwrap(), b.parse().unwrap())
    }

    #[test]
    fn spins() {
        assert!(spin(&FluxCharge::ints(1, 5)).is_trivial());
        assert_eq!(spin(&fc("1/2", "1")), PhaseFraction::from_rational(1, 2));
        assert_eq!(spin(&fc("1/2", "1/2")), PhaseFraction::from_rational(1, 4));
    }

    #[test]
    fn braidings() {
        assert!(braiding(&FluxCharge::ints(1, 0), &FluxCharge::ints(0, 1)).is_trivial());
        assert!(braiding(&FluxCharge::ints(1, 1), &fc("1/2", "-1/2")).is_trivial());
        assert_eq!(braiding(&fc("1/2", "1/2"), &fc("1/2", "1/2")), PhaseFraction::from_rational(1, 2));
    }

    #[test]
    fn bosons() {
        assert!(is_boson(&FluxCharge::ints(1, 3)));
        assert!(is_boson(&fc("-sqrt(2)", "sqrt(2)")));
        assert!(!is_boson(&fc("1/2", "1")));
        assert!(!is_boson(&fc("1", "sqrt(2)")));
    }

    #[test]
    fn exchange_preserves_statistics() {
        let x = fc("1/3", "sqrt(5)");
        let y = fc("2", "-1/7");
        assert_eq!(spin(&x), spin(&x.exchange()));
        assert_eq!(braiding(&x, &y), braiding(&x.exchange(), &y.exchange()));
    }

    #[test]
    fn discriminants() {
        let xs = [fc("1", "1"), fc("-sqrt(2)", "sqrt(2)")];
        assert_eq!(common_discriminant(&xs).unwrap(), 2);
        assert!(common_discriminant(&[fc("sqrt(2)", "0"), fc("0", "sqrt(3)")]).is_err());
    }
}
