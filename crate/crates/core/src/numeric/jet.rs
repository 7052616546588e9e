//! Truncated Taylor jets: value plus derivatives at a point, carried as
//! coefficients `c[k] = f^(k)(x0)/k!` up to a fixed order.

use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Jet {
    /// `c[k]` is the k-th Taylor coefficient; `c.len() - 1` is the order.
    pub c: Vec<f64>,
}

impl Jet {
    pub fn constant(value: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = value;
        Jet { c }
    }

    /// The identity perturbation `x0 + τ`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = x0;
        if order >= 1 {
            c[1] = 1.0;
        }
        Jet { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative (not the Taylor coefficient).
    pub fn derivative(&self, k: usize) -> f64 {
        let mut fact = 1.0;
        for i in 1..=k {
            fact *= i as f64;
        }
        self.c[k] * fact
    }

    pub fn add(&self, rhs: &Jet) -> Jet {
        let mut c = self.c.clone();
        for (a, b) in c.iter_mut().zip(&rhs.c) {
            *a += *b;
        }
        Jet { c }
    }

    pub fn sub(&self, rhs: &Jet) -> Jet {
        let mut c = self.c.clone();
        for (a, b) in c.iter_mut().zip(&rhs.c) {
            *a -= *b;
        }
        Jet { c }
    }

    pub fn scale(&self, s: f64) -> Jet {
        Jet {
            c: self.c.iter().map(|x| x * s).collect(),
        }
    }

    pub fn shift(&self, s: f64) -> Jet {
        let mut c = self.c.clone();
        c[0] += s;
        Jet { c }
    }

    pub fn mul(&self, rhs: &Jet) -> Jet {
        let n = self.c.len();
        let mut c = vec![0.0; n];
        for i in 0..n {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..n - i {
                c[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet { c }
    }

    pub fn recip(&self) -> Result<Jet> {
        if self.c[0] == 0.0 {
            return Err(Error::Numerical("jet reciprocal of zero".into()));
        }
        let n = self.c.len();
        let mut c = vec![0.0; n];
        c[0] = 1.0 / self.c[0];
        for k in 1..n {
            let mut acc = 0.0;
            for j in 0..k {
                acc += c[j] * self.c[k - j];
            }
            c[k] = -acc / self.c[0];
        }
        Ok(Jet { c })
    }

    pub fn div(&self, rhs: &Jet) -> Result<Jet> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn ln(&self) -> Result<Jet> {
        if self.c[0] <= 0.0 {
            return Err(Error::Numerical("jet log of non-positive value".into()));
        }
        let n = self.c.len();
        let mut c = vec![0.0; n];
        c[0] = self.c[0].ln();
        // x y' = x'  =>  k x0 y_k = k x_k - sum_{j=1}^{k-1} j y_j x_{k-j}
        for k in 1..n {
            let mut acc = k as f64 * self.c[k];
            for j in 1..k {
                acc -= j as f64 * c[j] * self.c[k - j];
            }
            c[k] = acc / (k as f64 * self.c[0]);
        }
        Ok(Jet { c })
    }

    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut c = vec![0.0; n];
        c[0] = self.c[0].exp();
        // y' = x' y  =>  k y_k = sum_{j=1}^{k} j x_j y_{k-j}
        for k in 1..n {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * self.c[j] * c[k - j];
            }
            c[k] = acc / k as f64;
        }
        Jet { c }
    }

    /// `self^p` for real `p`; requires a positive leading value.
    pub fn powf(&self, p: f64) -> Result<Jet> {
        Ok(self.ln()?.scale(p).exp())
    }

    /// Integer power by repeated multiplication.
    pub fn powu(&self, k: usize) -> Jet {
        let mut out = Jet::constant(1.0, self.order());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}
