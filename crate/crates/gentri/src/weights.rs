//! Weight, parameter and border functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{parse_err, Error, Result};
use crate::quiver::{Diagnostic, GenTriQuiver};
use crate::star::{OrbitData, StarQuiver};

/// Value of m on an orbit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Value(u64),
    Symbol { name: String, lower: u64 },
}

impl Multiplicity {
    pub fn lower(&self) -> u64 {
        match self {
            Multiplicity::Value(v) => *v,
            Multiplicity::Symbol { lower, .. } => *lower,
        }
    }

    pub fn value(&self) -> Option<u64> {
        match self {
            Multiplicity::Value(v) => Some(*v),
            Multiplicity::Symbol { .. } => None,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Value(v) => write!(f, "{v}"),
            Multiplicity::Symbol { name, lower } if *lower > 1 => write!(f, "{name}>={lower}"),
            Multiplicity::Symbol { name, .. } => write!(f, "{name}"),
        }
    }
}

/// A parameter or border value: exact rational or a symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Scalar {
    Value(BigRational),
    Symbol(String),
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Value(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Value(v) if v.is_zero())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Value(v) => write!(f, "{v}"),
            Scalar::Symbol(s) => f.write_str(s),
        }
    }
}

/// m and c are keyed by the id of an orbit's least arrow, b by vertex id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightData {
    pub m: BTreeMap<String, Multiplicity>,
    pub c: BTreeMap<String, Scalar>,
    pub b: BTreeMap<String, Scalar>,
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic())
        && chars.all(|c| c.is_alphanumeric() || "_:'.".contains(c))
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn parse_scalar(s: &str) -> Option<Scalar> {
    if is_symbol(s) {
        Some(Scalar::Symbol(s.to_string()))
    } else {
        parse_rational(s).map(Scalar::Value)
    }
}

pub fn parse_multiplicity(s: &str) -> Option<Multiplicity> {
    if let Ok(v) = s.parse::<u64>() {
        return (v > 0).then_some(Multiplicity::Value(v));
    }
    let (name, lower) = match s.split_once(">=") {
        Some((n, l)) => (n, l.parse::<u64>().ok().filter(|&l| l > 0)?),
        None => (s, 1),
    };
    is_symbol(name).then(|| Multiplicity::Symbol {
        name: name.to_string(),
        lower,
    })
}

impl WeightData {
    /// Fresh symbols `m_<rep>` and `c_<rep>` on every orbit, b = 0.
    pub fn symbolic(q: &GenTriQuiver, od: &OrbitData) -> Self {
        let mut w = WeightData::default();
        for o in 0..od.g_orbits.len() {
            let rep = &q.arrows()[od.rep(o)].id;
            w.m.insert(
                rep.clone(),
                Multiplicity::Symbol {
                    name: format!("m_{rep}"),
                    lower: 1,
                },
            );
            w.c.insert(rep.clone(), Scalar::Symbol(format!("c_{rep}")));
        }
        w
    }

    /// m = value and c = 1 on every orbit, b = 0.
    pub fn uniform(q: &GenTriQuiver, od: &OrbitData, m: u64) -> Self {
        let mut w = WeightData::default();
        for o in 0..od.g_orbits.len() {
            let rep = q.arrows()[od.rep(o)].id.clone();
            w.m.insert(rep.clone(), Multiplicity::Value(m));
            w.c.insert(rep, Scalar::int(1));
        }
        w
    }

    /// Replace symbols of m by the given values.
    pub fn instantiate(&self, values: &BTreeMap<String, u64>) -> Self {
        let mut w = self.clone();
        for m in w.m.values_mut() {
            if let Multiplicity::Symbol { name, .. } = m {
                if let Some(&v) = values.get(name.as_str()) {
                    *m = Multiplicity::Value(v);
                }
            }
        }
        w
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.m
            .values()
            .filter_map(|m| match m {
                Multiplicity::Symbol { name, .. } => Some(name.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn set_m(&mut self, q: &GenTriQuiver, od: &OrbitData, arrow: &str, m: Multiplicity) {
        let o = od.orbit_by_rep(q, arrow).expect("arrow in Q*");
        self.m.insert(q.arrows()[od.rep(o)].id.clone(), m);
    }

    pub fn set_c(&mut self, q: &GenTriQuiver, od: &OrbitData, arrow: &str, c: Scalar) {
        let o = od.orbit_by_rep(q, arrow).expect("arrow in Q*");
        self.c.insert(q.arrows()[od.rep(o)].id.clone(), c);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.m {
            out.push_str(&format!("m {k} {v}\n"));
        }
        for (k, v) in &self.c {
            out.push_str(&format!("c {k} {v}\n"));
        }
        for (k, v) in &self.b {
            out.push_str(&format!("b {k} {v}\n"));
        }
        out
    }
}

/// Read a `.wts` file on top of symbolic defaults.
pub fn parse_weights(text: &str, q: &GenTriQuiver, od: &OrbitData) -> Result<WeightData> {
    let mut w = WeightData::symbolic(q, od);
    let mut assigned: BTreeSet<(char, String)> = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [kind, key, value] = toks.as_slice() else {
            return Err(parse_err(line_no, format!("unrecognized line `{line}`")));
        };
        match *kind {
            "m" | "c" => {
                let o = od
                    .orbit_by_rep(q, key)
                    .ok_or_else(|| parse_err(line_no, format!("`{key}` is not an arrow of Q*")))?;
                let rep = q.arrows()[od.rep(o)].id.clone();
                let tag = kind.chars().next().unwrap_or('m');
                if !assigned.insert((tag, rep.clone())) {
                    return Err(parse_err(
                        line_no,
                        format!("orbit of `{rep}` already has a value for {kind}"),
                    ));
                }
                if *kind == "m" {
                    let m = parse_multiplicity(value)
                        .ok_or_else(|| parse_err(line_no, format!("invalid weight `{value}`")))?;
                    w.m.insert(rep, m);
                } else {
                    let c = parse_scalar(value).ok_or_else(|| {
                        parse_err(line_no, format!("invalid parameter `{value}`"))
                    })?;
                    if c.is_zero() {
                        return Err(parse_err(line_no, "parameter must be nonzero"));
                    }
                    w.c.insert(rep, c);
                }
            }
            "b" => {
                if !od.border.contains(*key) {
                    return Err(parse_err(
                        line_no,
                        format!("`{key}` is not a border vertex"),
                    ));
                }
                if !assigned.insert(('b', key.to_string())) {
                    return Err(parse_err(
                        line_no,
                        format!("duplicate border value at `{key}`"),
                    ));
                }
                let b = parse_scalar(value)
                    .ok_or_else(|| parse_err(line_no, format!("invalid border value `{value}`")))?;
                w.b.insert(key.to_string(), b);
            }
            other => return Err(parse_err(line_no, format!("unknown entry `{other}`"))),
        }
    }
    Ok(w)
}

/// A quiver together with its orbit structure and weights.
#[derive(Clone, Copy)]
pub struct Weighted<'a> {
    pub q: &'a GenTriQuiver,
    pub sq: &'a StarQuiver<'a>,
    pub od: &'a OrbitData,
    pub w: &'a WeightData,
}

impl<'a> Weighted<'a> {
    pub fn new(sq: &'a StarQuiver<'a>, od: &'a OrbitData, w: &'a WeightData) -> Self {
        Weighted {
            q: sq.base,
            sq,
            od,
            w,
        }
    }

    pub fn id(&self, a: usize) -> &'a str {
        &self.q.arrows()[a].id
    }

    fn rep_id(&self, a: usize) -> &'a str {
        self.id(self.od.rep(self.od.orbit(a)))
    }

    pub fn m(&self, a: usize) -> Result<&'a Multiplicity> {
        self.w
            .m
            .get(self.rep_id(a))
            .ok_or_else(|| Error::Weight(format!("no weight on the orbit of {}", self.id(a))))
    }

    pub fn m_value(&self, a: usize) -> Result<u64> {
        match self.m(a)? {
            Multiplicity::Value(v) => Ok(*v),
            Multiplicity::Symbol { name, .. } => Err(Error::Indeterminate(format!(
                "weight `{name}` on the orbit of {} is symbolic",
                self.id(a)
            ))),
        }
    }

    pub fn n(&self, a: usize) -> usize {
        self.od.n_of(a)
    }

    /// m_a * n_a for concrete m.
    pub fn mn(&self, a: usize) -> Result<usize> {
        Ok(self.m_value(a)? as usize * self.n(a))
    }

    pub fn c(&self, a: usize) -> Result<&'a Scalar> {
        self.w
            .c
            .get(self.rep_id(a))
            .ok_or_else(|| Error::Weight(format!("no parameter on the orbit of {}", self.id(a))))
    }

    pub fn b(&self, vertex: &str) -> Scalar {
        self.w
            .b
            .get(vertex)
            .cloned()
            .unwrap_or_else(|| Scalar::int(0))
    }

    /// Whether a is virtual; None when the bounds do not decide it.
    pub fn virtual_status(&self, a: usize) -> Option<bool> {
        let n = self.n(a) as u64;
        match self.m(a).ok()? {
            Multiplicity::Value(v) => Some(v * n == 2),
            Multiplicity::Symbol { lower, .. } => (lower * n > 2).then_some(false),
        }
    }

    pub fn is_virtual(&self, a: usize) -> Result<bool> {
        self.virtual_status(a).ok_or_else(|| {
            Error::Indeterminate(format!(
                "cannot decide whether {} is virtual with symbolic weight",
                self.id(a)
            ))
        })
    }

    /// m_a == 1 and n_a == 3.
    pub fn m1_n3(&self, a: usize) -> Result<bool> {
        if self.n(a) != 3 {
            return Ok(false);
        }
        match self.m(a)? {
            Multiplicity::Value(v) => Ok(*v == 1),
            Multiplicity::Symbol { lower, .. } if *lower > 1 => Ok(false),
            Multiplicity::Symbol { name, .. } => Err(Error::Indeterminate(format!(
                "cannot decide whether `{name}` equals 1"
            ))),
        }
    }

    /// g-walk of the given length starting at a.
    pub fn g_walk(&self, a: usize, len: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(len);
        let mut x = a;
        for _ in 0..len {
            out.push(x);
            x = self.sq.g(x);
        }
        out
    }

    /// Arrow sequence of A_a.
    pub fn a_seq(&self, a: usize) -> Result<Vec<usize>> {
        Ok(self.g_walk(a, self.mn(a)? - 1))
    }

    /// Arrow sequence of B_a.
    pub fn b_seq(&self, a: usize) -> Result<Vec<usize>> {
        Ok(self.g_walk(a, self.mn(a)?))
    }
}

pub fn validate_weights(sq: &StarQuiver, od: &OrbitData, w: &WeightData) -> Vec<Diagnostic> {
    let q = sq.base;
    let wq = Weighted::new(sq, od, w);
    let mut out = Vec::new();
    for o in 0..od.g_orbits.len() {
        let rep = wq.id(od.rep(o));
        if !w.m.contains_key(rep) {
            out.push(Diagnostic::new("missing weight", rep));
        }
        match w.c.get(rep) {
            None => out.push(Diagnostic::new("missing parameter", rep)),
            Some(c) if c.is_zero() => out.push(Diagnostic::new("parameter is zero", rep)),
            _ => {}
        }
    }
    for v in w.b.keys() {
        if !od.border.contains(v) {
            out.push(Diagnostic::new("border value off the border", v.clone()));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for &a in &sq.arrows {
        let abar = sq.bar(a);
        let (need, why) = match wq.virtual_status(abar) {
            Some(true) if abar != a && q.source(abar) == q.target(abar) => (
                4,
                "restriction (3): m*n >= 4 when the bar arrow is a virtual loop",
            ),
            Some(true) if abar != a => {
                (3, "restriction (2): m*n >= 3 when the bar arrow is virtual")
            }
            None if abar != a => {
                let need = if q.source(abar) == q.target(abar) {
                    4
                } else {
                    3
                };
                if lower_mn(&wq, a) >= need {
                    (need, "")
                } else {
                    out.push(Diagnostic::new(
                        "cannot verify restrictions (2)/(3)",
                        format!("{} (virtuality of {} undecided)", wq.id(a), wq.id(abar)),
                    ));
                    (2, "restriction (1): m*n >= 2")
                }
            }
            _ => (2, "restriction (1): m*n >= 2"),
        };
        let lb = lower_mn(&wq, a);
        if lb >= need {
            continue;
        }
        let concrete = matches!(wq.m(a), Ok(Multiplicity::Value(_)));
        let subject = format!(
            "{} (m*n {} {lb}, needs {need})",
            wq.id(a),
            if concrete { "=" } else { ">=" }
        );
        if concrete {
            out.push(Diagnostic::new(why, subject));
        } else {
            out.push(Diagnostic::new(format!("cannot verify {why}"), subject));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn lower_mn(wq: &Weighted, a: usize) -> u64 {
    wq.m(a).map(|m| m.lower()).unwrap_or(1) * wq.n(a) as u64
}

pub fn virtual_arrows(sq: &StarQuiver, od: &OrbitData, w: &WeightData) -> Result<BTreeSet<usize>> {
    let wq = Weighted::new(sq, od, w);
    let mut out = BTreeSet::new();
    for &a in &sq.arrows {
        if wq.is_virtual(a)? {
            out.insert(a);
        }
    }
    Ok(out)
}
