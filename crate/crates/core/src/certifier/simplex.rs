//! Derivative-free simplex descent and quasi-random start points.

/// Reflection, expansion, contraction and shrink coefficients.
const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub f: f64,
    pub evaluations: usize,
}

/// A box `[lo_i, hi_i]`; every point the search proposes is projected into it.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl SearchBox {
    pub fn cube(k: usize, lo: f64, hi: f64) -> Self {
        SearchBox { lo: vec![lo; k], hi: vec![hi; k] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    fn project(&self, x: &mut [f64]) {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = xi.clamp(self.lo[i], self.hi[i]);
        }
    }

    /// Maps a point of the unit cube into the box.
    pub fn from_unit(&self, u: &[f64]) -> Vec<f64> {
        u.iter().enumerate().map(|(i, ui)| self.lo[i] + ui * (self.hi[i] - self.lo[i])).collect()
    }
}

fn combine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (a - b)
    a.iter().zip(b).map(|(ai, bi)| ai + t * (ai - bi)).collect()
}

/// One simplex descent from `start`. Stops when the spread of function values across the
/// simplex falls to `ftol` or after `budget` evaluations.
pub fn nelder_mead(
    f: &mut impl FnMut(&[f64]) -> f64,
    start: &[f64],
    step: f64,
    bounds: &SearchBox,
    budget: usize,
    ftol: f64,
) -> Minimum {
    let k = start.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut x0 = start.to_vec();
    bounds.project(&mut x0);
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(k + 1);
    let f0 = eval(&x0, &mut evals);
    simplex.push((x0.clone(), f0));
    for i in 0..k {
        let mut v = x0.clone();
        // step inward when the start sits on the upper face
        v[i] = if v[i] + step <= bounds.hi[i] { v[i] + step } else { v[i] - step };
        bounds.project(&mut v);
        let fv = eval(&v, &mut evals);
        simplex.push((v, fv));
    }
    while evals < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[k].1);
        if worst - best <= ftol {
            break;
        }
        let mut centroid = vec![0.0; k];
        for (v, _) in &simplex[..k] {
            for (c, vi) in centroid.iter_mut().zip(v) {
                *c += vi / k as f64;
            }
        }
        let mut reflected = combine(&centroid, &simplex[k].0, REFLECT);
        bounds.project(&mut reflected);
        let fr = eval(&reflected, &mut evals);
        if fr < best {
            let mut expanded = combine(&centroid, &simplex[k].0, EXPAND);
            bounds.project(&mut expanded);
            let fe = eval(&expanded, &mut evals);
            simplex[k] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[k - 1].1 {
            simplex[k] = (reflected, fr);
            continue;
        }
        let (target, ft) = if fr < worst { (&reflected, fr) } else { (&simplex[k].0, worst) };
        let contracted: Vec<f64> = centroid.iter().zip(target).map(|(c, t)| c + CONTRACT * (t - c)).collect();
        let fc = eval(&contracted, &mut evals);
        if fc < ft {
            simplex[k] = (contracted, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for (v, fv) in simplex.iter_mut().skip(1) {
            for (vi, ai) in v.iter_mut().zip(&anchor) {
                *vi = ai + SHRINK * (*vi - ai);
            }
            *fv = eval(v, &mut evals);
        }
    }
    let (x, f) = simplex.into_iter().min_by(|a, b| a.1.total_cmp(&b.1)).expect("simplex has k + 1 vertices");
    Minimum { x, f, evaluations: evals }
}

fn primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 2u64;
    while out.len() < k {
        if out.iter().take_while(|p| *p * *p <= c).all(|p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let (mut r, mut f) = (0.0, 1.0 / base as f64);
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f /= base as f64;
    }
    r
}

/// Point `index` (from 1) of the `k`-dimensional Halton sequence.
pub fn halton(index: u64, k: usize) -> Vec<f64> {
    primes(k).into_iter().map(|b| radical_inverse(index, b)).collect()
}
