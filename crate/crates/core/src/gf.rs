//! Arithmetic over binary extension fields GF(2^p), 1 <= p <= 8.
//!
//! Elements are stored as the integer whose bit `k` is the coefficient of
//! `x^k` in the polynomial representation, so addition is XOR. Multiplication
//! goes through log/antilog tables built from a fixed primitive polynomial,
//! and a full `q x q` product table is kept for the decoders' inner loops.
//!
//! | p | q   | primitive polynomial       | integer |
//! |---|-----|----------------------------|---------|
//! | 1 | 2   | x + 1                      | 0x3     |
//! | 2 | 4   | x^2 + x + 1                | 0x7     |
//! | 3 | 8   | x^3 + x + 1                | 0xb     |
//! | 4 | 16  | x^4 + x + 1                | 0x13    |
//! | 5 | 32  | x^5 + x^2 + 1              | 0x25    |
//! | 6 | 64  | x^6 + x + 1                | 0x43    |
//! | 7 | 128 | x^7 + x^3 + 1              | 0x89    |
//! | 8 | 256 | x^8 + x^4 + x^3 + x^2 + 1  | 0x11d   |

use std::fmt;

use crate::error::{Error, Result};

/// Primitive polynomials indexed by extension degree (index 0 unused).
pub const PRIMITIVE_POLYNOMIALS: [u16; 9] = [0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x89, 0x11d];

/// A field symbol. Only meaningful together with the [`Field`] it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(2^p) arithmetic context. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    q: usize,
    primitive_poly: u16,
    /// `exp[i] = alpha^i`, doubled in length so `exp[log a + log b]` needs no reduction.
    exp: Vec<u8>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u16>,
    inv: Vec<u8>,
    mul: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("q", &self.q)
            .field("primitive_poly", &format_args!("{:#x}", self.primitive_poly))
            .finish()
    }
}

impl Field {
    /// Builds GF(2^p) from the primitive polynomial listed in
    /// [`PRIMITIVE_POLYNOMIALS`].
    pub fn new(p: u32) -> Result<Field> {
        if !(1..=8).contains(&p) {
            return Err(Error::Config(format!(
                "field extension degree must be in 1..=8, got {p}"
            )));
        }
        let q = 1usize << p;
        let poly = PRIMITIVE_POLYNOMIALS[p as usize];
        let order = q - 1;

        let mut exp = vec![0u8; 2 * order];
        let mut log = vec![0u16; q];
        let mut x: usize = 1;
        for (i, e) in exp.iter_mut().enumerate().take(order) {
            *e = x as u8;
            log[x] = i as u16;
            x <<= 1;
            if x & q != 0 {
                x ^= poly as usize;
            }
        }
        debug_assert_eq!(x, 1, "polynomial {poly:#x} is not primitive");
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }

        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = exp[(order - log[a] as usize) % order];
        }

        let mut mul = vec![0u8; q * q];
        for a in 1..q {
            for b in 1..q {
                mul[a * q + b] = exp[log[a] as usize + log[b] as usize];
            }
        }

        Ok(Field {
            p,
            q,
            primitive_poly: poly,
            exp,
            log,
            inv,
            mul,
        })
    }

    /// Builds the field of cardinality `q`, which must be a power of two in 2..=256.
    pub fn with_cardinality(q: usize) -> Result<Field> {
        if !q.is_power_of_two() || !(2..=256).contains(&q) {
            return Err(Error::Config(format!(
                "field cardinality must be a power of two in 2..=256, got {q}"
            )));
        }
        Field::new(q.trailing_zeros())
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn primitive_poly(&self) -> u16 {
        self.primitive_poly
    }

    pub fn element(&self, value: usize) -> Result<FieldElement> {
        if value < self.q {
            Ok(FieldElement(value as u8))
        } else {
            Err(Error::Domain(format!("{value} is not an element of GF({})", self.q)))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|v| FieldElement(v as u8))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.q).map(|v| FieldElement(v as u8))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    /// Same as [`Field::add`] in characteristic 2.
    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.index() * self.q + b.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(FieldElement(self.inv[a.index()]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        let b_inv = self.inv(b)?;
        Ok(self.mul(a, b_inv))
    }

    /// `alpha^k` for the primitive element `alpha = x`.
    pub fn pow_alpha(&self, k: usize) -> FieldElement {
        FieldElement(self.exp[k % (self.q - 1)])
    }

    /// Discrete log base `alpha`; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<usize> {
        (!a.is_zero()).then(|| self.log[a.index()] as usize)
    }

    /// Row `h` of the product table: `row[x] = h * x`.
    #[inline]
    pub(crate) fn mul_row(&self, h: FieldElement) -> &[u8] {
        let start = h.index() * self.q;
        &self.mul[start..start + self.q]
    }

    #[inline]
    pub(crate) fn inv_unchecked(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.inv[a.index()])
    }
}
