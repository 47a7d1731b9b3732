//! Class functions on enumerated groups and on products of two groups.
//!
//! Values are complex doubles indexed by conjugacy class; evaluation at an
//! element goes through the group's precomputed element-to-class map.

use crate::group::Group;
use num_complex::Complex64;

pub type C64 = Complex64;

/// A class function, stored on class representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<C64>,
}

impl ClassFunction {
    pub fn zero(g: &Group) -> Self {
        ClassFunction { values: vec![C64::new(0.0, 0.0); g.num_classes()] }
    }

    pub fn constant(g: &Group, v: C64) -> Self {
        ClassFunction { values: vec![v; g.num_classes()] }
    }

    pub fn trivial(g: &Group) -> Self {
        Self::constant(g, C64::new(1.0, 0.0))
    }

    /// Builds from per-element values, checking constancy on classes.
    pub fn from_element_values(g: &Group, f: impl Fn(usize) -> C64) -> Self {
        let values = g.classes.iter().map(|c| f(c.rep)).collect();
        ClassFunction { values }
    }

    pub fn eval(&self, g: &Group, element: usize) -> C64 {
        self.values[g.class_of(element)]
    }

    /// <self, other> = (1/|G|) sum |C| self(C) conj(other(C)).
    pub fn inner(&self, other: &ClassFunction, g: &Group) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (c, class) in g.classes.iter().enumerate() {
            acc += self.values[c] * other.values[c].conj() * class.members.len() as f64;
        }
        acc / g.order() as f64
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|a| a * s).collect() }
    }

    /// Pointwise (tensor) product.
    pub fn mul_pointwise(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn conj(&self) -> ClassFunction {
        ClassFunction { values: self.values.iter().map(|a| a.conj()).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// A class function on a product G x G', stored as a classes(G) x classes(G')
/// matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PairClassFunction {
    pub values: Vec<Vec<C64>>,
}

impl PairClassFunction {
    pub fn zero(g: &Group, h: &Group) -> Self {
        PairClassFunction {
            values: vec![vec![C64::new(0.0, 0.0); h.num_classes()]; g.num_classes()],
        }
    }

    pub fn eval(&self, g: &Group, h: &Group, a: usize, b: usize) -> C64 {
        self.values[g.class_of(a)][h.class_of(b)]
    }

    /// <self, chi x psi> over G x G'.
    pub fn inner_with_product(
        &self,
        chi: &ClassFunction,
        psi: &ClassFunction,
        g: &Group,
        h: &Group,
    ) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (cg, class_g) in g.classes.iter().enumerate() {
            let wg = class_g.members.len() as f64;
            for (ch, class_h) in h.classes.iter().enumerate() {
                let wh = class_h.members.len() as f64;
                acc += self.values[cg][ch]
                    * (chi.values[cg] * psi.values[ch]).conj()
                    * wg
                    * wh;
            }
        }
        acc / (g.order() as f64 * h.order() as f64)
    }

    /// <self, self>.
    pub fn norm_sq(&self, g: &Group, h: &Group) -> f64 {
        let mut acc = 0.0;
        for (cg, class_g) in g.classes.iter().enumerate() {
            let wg = class_g.members.len() as f64;
            for (ch, class_h) in h.classes.iter().enumerate() {
                let wh = class_h.members.len() as f64;
                acc += self.values[cg][ch].norm_sqr() * wg * wh;
            }
        }
        acc / (g.order() as f64 * h.order() as f64)
    }

    pub fn sub(&self, other: &PairClassFunction) -> PairClassFunction {
        PairClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| a - b).collect())
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|r| r.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

/// Rounds to the nearest integer, returning the deviation.
pub fn round_to_integer(v: C64) -> (i64, f64) {
    let n = v.re.round();
    let dev = ((v.re - n).powi(2) + v.im.powi(2)).sqrt();
    (n as i64, dev)
}
