//! CSV instance files.
//!
//! Scalar inequalities use named columns (`y,m` or `a,b`); n-ary Young uses `a1..an`; paired
//! inequalities use `x1..xn,y1..yn`, one instance per row. Matrix inequalities take one row per
//! `i` with columns `x1..xm`, grouped into instances by an optional `instance` column (the whole
//! file is one instance without it). Radon files carry `r` as a column unless `--r` is given.
//! Any file may add an `alpha` column.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;
use std::path::Path;

use alpha_ineq::catalog::{Bernoulli, Instance, Multi, NaryYoung, Paired, Radon, Young, MAX_MAGNITUDE};
use alpha_ineq::{Dimension, Error, InequalityId, InstanceSpec, Result};

/// An instance read from a file, with the line its data starts on.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadedInstance {
    pub line: u64,
    pub spec: InstanceSpec,
}

fn ingest(line: u64, msg: impl std::fmt::Display) -> Error {
    Error::Usage(format!("line {line}: {msg}"))
}

struct Header {
    names: Vec<String>,
}

impl Header {
    fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Indices of `prefix1, prefix2, ...` in order; fails on gaps.
    fn numbered(&self, prefix: &str) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        while let Some(i) = self.find(&format!("{prefix}{}", out.len() + 1)) {
            out.push(i);
        }
        let stray = self.names.iter().filter(|n| {
            n.strip_prefix(prefix).is_some_and(|rest| !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()))
        });
        if stray.count() != out.len() {
            return Err(ingest(1, format!("columns {prefix}1..{prefix}n must be numbered without gaps")));
        }
        Ok(out)
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.find(name).ok_or_else(|| ingest(1, format!("missing column '{name}'")))
    }
}

fn field(record: &csv::StringRecord, i: usize, name: &str, line: u64) -> Result<f64> {
    let raw = record.get(i).ok_or_else(|| ingest(line, format!("missing value for '{name}'")))?;
    raw.trim().parse::<f64>().map_err(|_| ingest(line, format!("'{raw}' in column '{name}' is not a number")))
}

fn magnitude(record: &csv::StringRecord, i: usize, name: &str, line: u64) -> Result<f64> {
    let t = field(record, i, name, line)?;
    if !(t >= 0.0) {
        return Err(ingest(line, format!("magnitude {name} = {t} must be non-negative")));
    }
    if t > MAX_MAGNITUDE {
        return Err(ingest(line, format!("magnitude {name} = {t} exceeds {MAX_MAGNITUDE:e}")));
    }
    Ok(t)
}

fn magnitudes(record: &csv::StringRecord, cols: &[usize], prefix: &str, line: u64) -> Result<Vec<f64>> {
    cols.iter().enumerate().map(|(k, &i)| magnitude(record, i, &format!("{prefix}{}", k + 1), line)).collect()
}

fn dimension(
    record: &csv::StringRecord,
    alpha_col: Option<usize>,
    default: Option<Dimension>,
    line: u64,
) -> Result<Dimension> {
    match (alpha_col, default) {
        (Some(i), _) => {
            let a = field(record, i, "alpha", line)?;
            Dimension::new(a).map_err(|_| ingest(line, format!("alpha = {a} is outside (0, 1]")))
        }
        (None, Some(d)) => Ok(d),
        (None, None) => Err(ingest(line, "no alpha column and no --alpha given")),
    }
}

/// First line, α and rows of one grouped matrix instance.
type Group = (u64, Option<Dimension>, Vec<Vec<f64>>);

/// Reads every instance of `path` for inequality `id`. `alpha` fills in a missing `alpha` column
/// and `radon_r` a missing `r` column.
pub fn load_instances(
    path: &Path,
    id: InequalityId,
    alpha: Option<Dimension>,
    radon_r: Option<f64>,
) -> Result<Vec<LoadedInstance>> {
    let file = File::open(path).map_err(|e| Error::Usage(format!("cannot open {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(file);
    let header = Header {
        names: reader.headers().map_err(|e| ingest(1, e))?.iter().map(|h| h.trim().to_ascii_lowercase()).collect(),
    };
    let alpha_col = header.find("alpha");
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            ingest(line, e)
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|f| f.trim().is_empty()) {
            continue;
        }
        rows.push((line, record));
    }
    if rows.is_empty() {
        return Err(Error::Usage(format!("{}: no data rows", path.display())));
    }

    let r_value = |record: &csv::StringRecord, line: u64| -> Result<f64> {
        match (header.find("r"), radon_r) {
            (_, Some(r)) => Ok(r),
            (Some(i), None) => field(record, i, "r", line),
            (None, None) => Err(ingest(line, "no r column and no --r given")),
        }
    };

    let mut out = Vec::new();
    match id {
        InequalityId::MinkowskiMulti | InequalityId::HolderMulti | InequalityId::RadonMulti => {
            let cols = header.numbered("x")?;
            if cols.is_empty() {
                return Err(ingest(1, "matrix files need columns x1..xm"));
            }
            let group = header.find("instance");
            let mut groups: BTreeMap<String, Group> = BTreeMap::new();
            let mut order = Vec::new();
            for (line, record) in &rows {
                let key = group.map(|g| record.get(g).unwrap_or("").trim().to_string()).unwrap_or_default();
                let dim = dimension(record, alpha_col, alpha, *line)?;
                let row = magnitudes(record, &cols, "x", *line)?;
                let entry = groups.entry(key.clone()).or_insert_with(|| {
                    order.push(key.clone());
                    (*line, Some(dim), Vec::new())
                });
                if entry.1 != Some(dim) {
                    return Err(ingest(*line, "alpha differs between rows of one instance"));
                }
                entry.2.push(row);
            }
            for key in order {
                let (line, dim, rows) = groups.remove(&key).expect("grouped above");
                let instance = Instance::Multi(Multi { rows });
                out.push(LoadedInstance { line, spec: InstanceSpec { dim: dim.expect("set"), instance } });
            }
        }
        _ => {
            let cols = match id {
                InequalityId::Bernoulli => vec![header.require("y")?, header.require("m")?],
                InequalityId::Young => vec![header.require("a")?, header.require("b")?],
                InequalityId::NaryYoung => header.numbered("a")?,
                _ => {
                    let (x, y) = (header.numbered("x")?, header.numbered("y")?);
                    if x.is_empty() || x.len() != y.len() {
                        return Err(ingest(
                            1,
                            format!("need x1..xn and y1..yn with equal n ({} vs {})", x.len(), y.len()),
                        ));
                    }
                    x.into_iter().chain(y).collect()
                }
            };
            if cols.is_empty() {
                return Err(ingest(1, format!("no magnitude columns for {id}")));
            }
            for (line, record) in &rows {
                let line = *line;
                let dim = dimension(record, alpha_col, alpha, line)?;
                let instance: Instance = match id {
                    InequalityId::Bernoulli => {
                        let y = field(record, cols[0], "y", line)?;
                        if !(y > 0.0) {
                            return Err(ingest(line, format!("y = {y} must be positive")));
                        }
                        Bernoulli { y, m: field(record, cols[1], "m", line)? }.into()
                    }
                    InequalityId::Young => {
                        Young { a: magnitude(record, cols[0], "a", line)?, b: magnitude(record, cols[1], "b", line)? }
                            .into()
                    }
                    InequalityId::NaryYoung => NaryYoung { a: magnitudes(record, &cols, "a", line)? }.into(),
                    _ => {
                        let n = cols.len() / 2;
                        let x = magnitudes(record, &cols[..n], "x", line)?;
                        let y = magnitudes(record, &cols[n..], "y", line)?;
                        if id == InequalityId::Radon {
                            Radon { x, y, r: r_value(record, line)? }.into()
                        } else {
                            Paired { x, y }.into()
                        }
                    }
                };
                out.push(LoadedInstance { line, spec: InstanceSpec { dim, instance } });
            }
        }
    }
    Ok(out)
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes instances in the format [`load_instances`] reads, with an `alpha` column. Every
/// instance must have the same shape.
pub fn write_instances(path: &Path, specs: &[InstanceSpec]) -> Result<()> {
    let io = |e: std::io::Error| Error::Usage(format!("cannot write {}: {e}", path.display()));
    let first = specs.first().ok_or_else(|| Error::Usage("nothing to write".into()))?;
    let numbered = |p: &str, n: usize| (1..=n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    let mut out = String::new();
    let header: Vec<String> = match &first.instance {
        Instance::Bernoulli(_) => vec!["y".into(), "m".into()],
        Instance::Young(_) => vec!["a".into(), "b".into()],
        Instance::NaryYoung(a) => numbered("a", a.a.len()),
        Instance::Paired(p) => [numbered("x", p.x.len()), numbered("y", p.y.len())].concat(),
        Instance::Radon(p) => [numbered("x", p.x.len()), numbered("y", p.y.len()), vec!["r".into()]].concat(),
        Instance::Multi(m) => [vec!["instance".into()], numbered("x", m.m())].concat(),
    };
    out.push_str(&header.join(","));
    out.push_str(",alpha\n");
    for (k, spec) in specs.iter().enumerate() {
        let alpha = real(spec.dim.alpha());
        let rows: Vec<Vec<f64>> = match &spec.instance {
            Instance::Bernoulli(b) => vec![vec![b.y, b.m]],
            Instance::Young(y) => vec![vec![y.a, y.b]],
            Instance::NaryYoung(a) => vec![a.a.clone()],
            Instance::Paired(p) => vec![[p.x.clone(), p.y.clone()].concat()],
            Instance::Radon(p) => vec![[p.x.clone(), p.y.clone(), vec![p.r]].concat()],
            Instance::Multi(m) => m.rows.clone(),
        };
        let width = rows[0].len();
        if std::mem::discriminant(&spec.instance) != std::mem::discriminant(&first.instance)
            || (!matches!(spec.instance, Instance::Multi(_)) && width != header.len())
            || rows.iter().any(|r| r.len() != rows[0].len())
        {
            return Err(Error::Usage(format!("instance {k} does not match the shape of the first")));
        }
        for row in rows {
            let mut cells: Vec<String> = row.into_iter().map(real).collect();
            if matches!(spec.instance, Instance::Multi(_)) {
                cells.insert(0, k.to_string());
            }
            cells.push(alpha.clone());
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }
    File::create(path).and_then(|mut f| f.write_all(out.as_bytes())).map_err(io)
}
