//! Truncated Taylor series used to differentiate compositions `f(z(t))`.

use crate::flux::FluxFunction;

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

fn truncated_product(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut out = vec![0.0; n];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0.0 {
            continue;
        }
        for (k, &bk) in b.iter().take(n - i).enumerate() {
            out[i + k] += ai * bk;
        }
    }
    out
}

/// Taylor coefficients of `f(z(s))` from `z`'s Taylor coefficients and the
/// values `outer[m] = f^{(m)}(z_0)`; `outer` needs `z.len()` entries.
pub fn compose(outer: &[f64], z: &[f64]) -> Vec<f64> {
    let n = z.len();
    let mut out = vec![0.0; n];
    out[0] = outer[0];
    let mut delta = z.to_vec();
    delta[0] = 0.0;
    let mut power = vec![0.0; n];
    power[0] = 1.0;
    for m in 1..n {
        power = truncated_product(&power, &delta);
        let c = outer[m] / factorial(m);
        for (o, p) in out.iter_mut().zip(&power) {
            *o += c * p;
        }
    }
    out
}

/// `d^n/dt^n f(z(t))` given `derivs = [z, z', ..., z^{(n)}]` (Faa di Bruno).
pub fn flux_time_derivative(flux: FluxFunction, derivs: &[f64]) -> f64 {
    let n = derivs.len() - 1;
    match n {
        0 => flux.value(derivs[0]),
        1 => flux.derivative(derivs[0], 1) * derivs[1],
        _ => {
            let taylor: Vec<f64> = derivs
                .iter()
                .enumerate()
                .map(|(i, d)| d / factorial(i))
                .collect();
            let outer: Vec<f64> = (0..=n).map(|m| flux.derivative(derivs[0], m)).collect();
            compose(&outer, &taylor)[n] * factorial(n)
        }
    }
}

/// Bivariate truncated series `sum a[i][l] s^i y^l` with `i + l <= order`.
#[derive(Debug, Clone)]
pub(crate) struct Jet2 {
    order: usize,
    c: Vec<f64>,
}

impl Jet2 {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            c: vec![0.0; (order + 1) * (order + 1)],
        }
    }

    pub fn get(&self, i: usize, l: usize) -> f64 {
        if i + l > self.order {
            0.0
        } else {
            self.c[i * (self.order + 1) + l]
        }
    }

    pub fn set(&mut self, i: usize, l: usize, v: f64) {
        debug_assert!(i + l <= self.order);
        self.c[i * (self.order + 1) + l] = v;
    }

    fn mul(&self, other: &Jet2) -> Jet2 {
        let n = self.order;
        let mut out = Jet2::zeros(n);
        for i1 in 0..=n {
            for l1 in 0..=(n - i1) {
                let a = self.get(i1, l1);
                if a == 0.0 {
                    continue;
                }
                for i2 in 0..=(n - i1 - l1) {
                    for l2 in 0..=(n - i1 - l1 - i2) {
                        let idx = (i1 + i2) * (n + 1) + l1 + l2;
                        out.c[idx] += a * other.get(i2, l2);
                    }
                }
            }
        }
        out
    }

    /// `g(self)` where `outer[m] = g^{(m)}(self_00)`, `outer.len() > order`.
    pub fn compose(&self, outer: &[f64]) -> Jet2 {
        let n = self.order;
        let mut delta = self.clone();
        delta.set(0, 0, 0.0);
        let mut out = Jet2::zeros(n);
        out.set(0, 0, outer[0]);
        let mut power = Jet2::zeros(n);
        power.set(0, 0, 1.0);
        for m in 1..=n {
            power = power.mul(&delta);
            let c = outer[m] / factorial(m);
            for (o, p) in out.c.iter_mut().zip(&power.c) {
                *o += c * p;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_series_matches_closed_form() {
        // exp(s) has Taylor coefficients 1/i!
        let z = [0.0, 1.0, 0.0, 0.0, 0.0];
        let outer = [1.0; 5];
        let out = compose(&outer, &z);
        for (i, v) in out.iter().enumerate() {
            assert!((v - 1.0 / factorial(i)).abs() < 1e-15);
        }
    }

    #[test]
    fn burgers_third_time_derivative() {
        // d^3/dt^3 (z^2/2) = z z''' + 3 z' z''
        let d = [1.3, -0.4, 2.0, 0.7];
        let expected = d[0] * d[3] + 3.0 * d[1] * d[2];
        let got = flux_time_derivative(FluxFunction::Burgers, &d);
        assert!((got - expected).abs() < 1e-14);
    }

    #[test]
    fn exponential_second_time_derivative() {
        // d^2/dt^2 e^z = e^z (z'' + z'^2)
        let d = [0.2, 0.5, -1.5];
        let expected = 0.2f64.exp() * (d[2] + d[1] * d[1]);
        let got = flux_time_derivative(FluxFunction::Exponential, &d);
        assert!((got - expected).abs() < 1e-14);
    }

    #[test]
    fn bivariate_square() {
        // (1 + s + y)^2 = 1 + 2s + 2y + s^2 + 2sy + y^2
        let mut j = Jet2::zeros(2);
        j.set(0, 0, 1.0);
        j.set(1, 0, 1.0);
        j.set(0, 1, 1.0);
        let sq = j.compose(&[1.0, 2.0, 2.0]);
        assert_eq!(sq.get(0, 0), 1.0);
        assert_eq!(sq.get(1, 0), 2.0);
        assert_eq!(sq.get(0, 1), 2.0);
        assert_eq!(sq.get(1, 1), 2.0);
        assert_eq!(sq.get(2, 0), 1.0);
        assert_eq!(sq.get(0, 2), 1.0);
    }
}
