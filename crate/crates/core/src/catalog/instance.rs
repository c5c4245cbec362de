use crate::alpha::Dimension;
use crate::error::{Error, Result};

/// Largest magnitude an evaluator accepts.
pub const MAX_MAGNITUDE: f64 = 1e6;

#[derive(Clone, Debug, PartialEq)]
pub struct Bernoulli {
    pub y: f64,
    pub m: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Young {
    pub a: f64,
    pub b: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NaryYoung {
    pub a: Vec<f64>,
}

/// Two magnitude sequences of equal length.
#[derive(Clone, Debug, PartialEq)]
pub struct Paired {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// An `n × m` magnitude matrix; row `i` holds `x_{i1}..x_{im}`, column `j` is sequence `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Multi {
    pub rows: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Radon {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub r: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Bernoulli(Bernoulli),
    Young(Young),
    NaryYoung(NaryYoung),
    Paired(Paired),
    Multi(Multi),
    Radon(Radon),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Bernoulli(_) => "bernoulli",
            Instance::Young(_) => "young",
            Instance::NaryYoung(_) => "nary",
            Instance::Paired(_) => "paired",
            Instance::Multi(_) => "multi",
            Instance::Radon(_) => "radon",
        }
    }

    /// Every magnitude in the instance, in a fixed order.
    pub fn magnitudes(&self) -> Vec<f64> {
        match self {
            Instance::Bernoulli(b) => vec![b.y],
            Instance::Young(y) => vec![y.a, y.b],
            Instance::NaryYoung(n) => n.a.clone(),
            Instance::Paired(p) => p.x.iter().chain(&p.y).copied().collect(),
            Instance::Multi(m) => m.rows.iter().flatten().copied().collect(),
            Instance::Radon(r) => r.x.iter().chain(&r.y).copied().collect(),
        }
    }

    /// Applies `f` to every magnitude, keeping the shape and non-magnitude parameters.
    pub fn map_magnitudes(&self, f: impl Fn(f64) -> f64) -> Instance {
        let map = |v: &[f64]| v.iter().map(|&t| f(t)).collect::<Vec<_>>();
        match self {
            Instance::Bernoulli(b) => Instance::Bernoulli(Bernoulli { y: f(b.y), m: b.m }),
            Instance::Young(y) => Instance::Young(Young { a: f(y.a), b: f(y.b) }),
            Instance::NaryYoung(n) => Instance::NaryYoung(NaryYoung { a: map(&n.a) }),
            Instance::Paired(p) => Instance::Paired(Paired { x: map(&p.x), y: map(&p.y) }),
            Instance::Multi(m) => Instance::Multi(Multi { rows: m.rows.iter().map(|r| map(r)).collect() }),
            Instance::Radon(r) => Instance::Radon(Radon { x: map(&r.x), y: map(&r.y), r: r.r }),
        }
    }

    /// Sequence length `n` (rows for matrices, entries for tuples; 1 for scalar instances).
    pub fn len(&self) -> usize {
        match self {
            Instance::Bernoulli(_) | Instance::Young(_) => 1,
            Instance::NaryYoung(n) => n.a.len(),
            Instance::Paired(p) => p.x.len(),
            Instance::Multi(m) => m.rows.len(),
            Instance::Radon(r) => r.x.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A concrete instance together with its dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub dim: Dimension,
    pub instance: Instance,
}

impl InstanceSpec {
    pub fn new(dim: Dimension, instance: impl Into<Instance>) -> Self {
        InstanceSpec { dim, instance: instance.into() }
    }
}

macro_rules! into_instance {
    ($($ty:ident),*) => {
        $(impl From<$ty> for Instance {
            fn from(v: $ty) -> Self {
                Instance::$ty(v)
            }
        })*
    };
}

into_instance!(Bernoulli, Young, NaryYoung, Paired, Multi, Radon);

pub(crate) fn check_magnitude(name: &str, t: f64) -> Result<()> {
    if t.is_nan() || t < 0.0 {
        Err(Error::Domain(format!("{name} must be a nonnegative magnitude, got {t}")))
    } else if t > MAX_MAGNITUDE {
        Err(Error::Range(format!("{name} = {t} exceeds the supported range [0, {MAX_MAGNITUDE:e}]")))
    } else {
        Ok(())
    }
}

pub(crate) fn check_magnitudes(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Shape(format!("{name} is empty")));
    }
    v.iter().enumerate().try_for_each(|(i, &t)| check_magnitude(&format!("{name}[{i}]"), t))
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    check_magnitudes("x", x)?;
    check_magnitudes("y", y)?;
    if x.len() != y.len() {
        return Err(Error::Shape(format!("x has {} entries, y has {}", x.len(), y.len())));
    }
    Ok(())
}

impl Paired {
    pub(crate) fn validate(&self) -> Result<()> {
        check_pair(&self.x, &self.y)
    }
}

impl Multi {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows.iter().map(|row| row[j]).collect()
    }

    pub fn from_columns(columns: &[Vec<f64>]) -> Multi {
        let n = columns.first().map_or(0, Vec::len);
        Multi { rows: (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect() }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let m = self.m();
        if self.rows.is_empty() || m == 0 {
            return Err(Error::Shape("matrix is empty".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Shape(format!("row {i} has {} columns, expected {m}", row.len())));
            }
            check_magnitudes(&format!("x[{i}]"), row)?;
        }
        Ok(())
    }
}

impl Radon {
    pub(crate) fn validate(&self) -> Result<()> {
        check_pair(&self.x, &self.y)
    }
}
