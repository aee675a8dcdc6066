//! Marked triangulated surfaces and their generalized triangulation quivers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::quiver::{BlockInstance, BlockKind, GenTriQuiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triangle {
    /// Edges in the cyclic order given by the orientation.
    Ordinary([String; 3]),
    SelfFolded {
        folded: String,
        enclosing: String,
        marked: bool,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkedSurface {
    /// edge id -> boundary flag
    pub edges: BTreeMap<String, bool>,
    pub triangles: Vec<Triangle>,
}

impl MarkedSurface {
    pub fn boundary_edges(&self) -> Vec<&str> {
        self.edges
            .iter()
            .filter(|(_, &b)| b)
            .map(|(e, _)| e.as_str())
            .collect()
    }

    pub fn self_folded(&self) -> impl Iterator<Item = (&str, &str, bool)> {
        self.triangles.iter().filter_map(|t| match t {
            Triangle::SelfFolded {
                folded,
                enclosing,
                marked,
            } => Some((folded.as_str(), enclosing.as_str(), *marked)),
            Triangle::Ordinary(_) => None,
        })
    }

    pub fn marked_count(&self) -> usize {
        self.self_folded().filter(|t| t.2).count()
    }

    /// Same surface with every marking removed.
    pub fn unmarked(&self) -> MarkedSurface {
        let mut s = self.clone();
        for t in &mut s.triangles {
            if let Triangle::SelfFolded { marked, .. } = t {
                *marked = false;
            }
        }
        s
    }

    pub fn check(&self) -> Result<()> {
        if self.edges.len() < 2 {
            return Err(Error::Structure(
                "a surface needs at least two edges".into(),
            ));
        }
        if self.edges.len() == 2 && self.triangles.is_empty() && self.edges.values().all(|&b| b) {
            return Err(Error::Structure("the unpunctured digon is excluded".into()));
        }
        let mut slots: BTreeMap<&str, usize> = self.edges.keys().map(|e| (e.as_str(), 0)).collect();
        let mut folded = BTreeSet::new();
        let mut bump = |e: &str| -> Result<()> {
            match slots.get_mut(e) {
                Some(n) => {
                    *n += 1;
                    Ok(())
                }
                None => Err(Error::Structure(format!("undeclared edge `{e}`"))),
            }
        };
        for t in &self.triangles {
            match t {
                Triangle::Ordinary(es) => {
                    if es[0] == es[1] || es[1] == es[2] || es[0] == es[2] {
                        return Err(Error::Structure(format!(
                            "triangle ({} {} {}) repeats an edge",
                            es[0], es[1], es[2]
                        )));
                    }
                    for e in es {
                        bump(e)?;
                    }
                }
                Triangle::SelfFolded {
                    folded: d,
                    enclosing: c,
                    marked,
                } => {
                    if d == c {
                        return Err(Error::Structure(format!(
                            "self-folded triangle on `{d}` alone"
                        )));
                    }
                    bump(c)?;
                    if !self.edges.contains_key(d) {
                        return Err(Error::Structure(format!("undeclared edge `{d}`")));
                    }
                    if !folded.insert(d.as_str()) {
                        return Err(Error::Structure(format!("edge `{d}` is folded twice")));
                    }
                    if *marked && self.edges[c] {
                        return Err(Error::Structure(format!(
                            "marked self-folded triangle has boundary enclosing edge `{c}`"
                        )));
                    }
                }
            }
        }
        for (e, &boundary) in &self.edges {
            let n = slots[e.as_str()];
            if folded.contains(e.as_str()) {
                if n != 0 || boundary {
                    return Err(Error::Structure(format!(
                        "folded edge `{e}` lies in other triangles or on the boundary"
                    )));
                }
            } else if n + boundary as usize != 2 {
                return Err(Error::Structure(format!(
                    "edge `{e}` lies in {n} triangle slots{}",
                    if boundary { " and on the boundary" } else { "" }
                )));
            }
        }
        Ok(())
    }
}

fn valid_edge(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '-')
}

pub fn parse_surface(text: &str) -> Result<MarkedSurface> {
    let mut s = MarkedSurface::default();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        for t in &toks[1..] {
            if !valid_edge(t) {
                return Err(parse_err(ln, format!("invalid edge id `{t}`")));
            }
        }
        match toks.as_slice() {
            ["edge", e, rest @ ..] => {
                let boundary = match rest {
                    [] => false,
                    ["boundary"] => true,
                    _ => return Err(parse_err(ln, "expected `edge <id> [boundary]`")),
                };
                if s.edges.insert(e.to_string(), boundary).is_some() {
                    return Err(parse_err(ln, format!("duplicate edge `{e}`")));
                }
            }
            ["triangle", a, b, c] => {
                s.triangles.push(Triangle::Ordinary([
                    a.to_string(),
                    b.to_string(),
                    c.to_string(),
                ]));
            }
            ["selffolded", d, c, rest @ ..] => {
                let marked = match rest {
                    [] => false,
                    ["marked"] => true,
                    _ => {
                        return Err(parse_err(
                            ln,
                            "expected `selffolded <folded> <enclosing> [marked]`",
                        ))
                    }
                };
                s.triangles.push(Triangle::SelfFolded {
                    folded: d.to_string(),
                    enclosing: c.to_string(),
                    marked,
                });
            }
            _ => return Err(parse_err(ln, format!("unrecognized line `{line}`"))),
        }
    }
    s.check()?;
    Ok(s)
}

/// Local configuration that produced a group of blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    BoundaryLoop,
    Triangle,
    UnmarkedFold,
    MarkedFold,
    TwoMarkedFolds,
    ThreeMarkedFolds,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::BoundaryLoop => "boundary-loop",
            Rule::Triangle => "triangle",
            Rule::UnmarkedFold => "unmarked-fold",
            Rule::MarkedFold => "marked-fold",
            Rule::TwoMarkedFolds => "two-marked-folds",
            Rule::ThreeMarkedFolds => "three-marked-folds",
        }
    }
}

/// One application of a construction rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: Rule,
    pub edges: Vec<String>,
    pub blocks: Vec<String>,
}

impl fmt::Display for RuleApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} on {} -> {}",
            self.rule.name(),
            self.edges.join(" "),
            self.blocks.join(" ")
        )
    }
}

#[derive(Clone, Debug)]
pub struct SurfaceQuiver {
    pub quiver: GenTriQuiver,
    pub applied: Vec<RuleApplication>,
}

/// Rotate a cyclic triple so that position `k` comes last.
fn rotate_last(t: &[String; 3], k: usize) -> [String; 3] {
    [t[(k + 1) % 3].clone(), t[(k + 2) % 3].clone(), t[k].clone()]
}

pub fn surface_to_quiver(s: &MarkedSurface) -> Result<SurfaceQuiver> {
    s.check()?;
    // enclosing edge -> folded edge of a marked self-folded triangle
    let marked: BTreeMap<&str, &str> = s
        .self_folded()
        .filter(|t| t.2)
        .map(|(d, c, _)| (c, d))
        .collect();
    let mut blocks = Vec::new();
    let mut applied = Vec::new();
    let mut claimed: BTreeSet<&str> = BTreeSet::new();
    let mut push =
        |rule, edges: Vec<&str>, bs: Vec<BlockInstance>, applied: &mut Vec<RuleApplication>| {
            applied.push(RuleApplication {
                rule,
                edges: edges.iter().map(|e| e.to_string()).collect(),
                blocks: bs.iter().map(|b| b.name.clone()).collect(),
            });
            blocks.extend(bs);
        };
    for (ti, t) in s.triangles.iter().enumerate() {
        let Triangle::Ordinary(es) = t else { continue };
        let hits: Vec<usize> = (0..3)
            .filter(|&k| marked.contains_key(es[k].as_str()))
            .collect();
        let name = format!("T{}", ti + 1);
        for &k in &hits {
            claimed.insert(es[k].as_str());
        }
        match hits.len() {
            0 => {
                let b = BlockInstance::new(
                    &name,
                    BlockKind::II,
                    &[("a", &es[0]), ("b", &es[1]), ("c", &es[2])],
                );
                push(
                    Rule::Triangle,
                    es.iter().map(String::as_str).collect(),
                    vec![b],
                    &mut applied,
                );
            }
            1 => {
                let [a, b, c] = rotate_last(es, hits[0]);
                let d = marked[c.as_str()];
                let bl = BlockInstance::new(
                    &name,
                    BlockKind::IV,
                    &[("a", &a), ("b", &b), ("c", &c), ("d", d)],
                );
                push(
                    Rule::MarkedFold,
                    vec![&a, &b, &c, d],
                    vec![bl],
                    &mut applied,
                );
            }
            2 => {
                let zk = (0..3).find(|k| !hits.contains(k)).unwrap_or(0);
                let z = &es[zk];
                let x1 = &es[(zk + 2) % 3];
                let x2 = &es[(zk + 1) % 3];
                let (y1, y2) = (marked[x1.as_str()], marked[x2.as_str()]);
                let bl = BlockInstance::new(
                    &name,
                    BlockKind::V,
                    &[("z", z), ("x1", x1), ("x2", x2), ("y1", y1), ("y2", y2)],
                );
                push(
                    Rule::TwoMarkedFolds,
                    vec![x1, z, x2, y1, y2],
                    vec![bl],
                    &mut applied,
                );
            }
            _ => {
                let [big_a, big_b, big_c] = es;
                let (a, b, c) = (
                    marked[big_a.as_str()],
                    marked[big_b.as_str()],
                    marked[big_c.as_str()],
                );
                let cycles: [[&str; 3]; 4] = [
                    [big_a, big_b, big_c],
                    [a, big_b, c],
                    [big_a, b, c],
                    [a, b, big_c],
                ];
                let bs = cycles
                    .iter()
                    .zip(['a', 'b', 'c', 'd'])
                    .map(|(cy, suffix)| {
                        BlockInstance::new(
                            &format!("{name}{suffix}"),
                            BlockKind::II,
                            &[("a", cy[0]), ("b", cy[1]), ("c", cy[2])],
                        )
                    })
                    .collect();
                push(
                    Rule::ThreeMarkedFolds,
                    vec![big_a, big_b, big_c, a, b, c],
                    bs,
                    &mut applied,
                );
            }
        }
    }
    for (ti, t) in s.triangles.iter().enumerate() {
        let Triangle::SelfFolded {
            folded,
            enclosing,
            marked: m,
        } = t
        else {
            continue;
        };
        if *m {
            if !claimed.contains(enclosing.as_str()) {
                return Err(Error::Structure(format!(
                    "marked self-folded triangle on `{folded}` has no ordinary neighbour along `{enclosing}`"
                )));
            }
            continue;
        }
        let b = BlockInstance::new(
            &format!("S{}", ti + 1),
            BlockKind::III,
            &[("x", folded), ("y", enclosing)],
        );
        push(
            Rule::UnmarkedFold,
            vec![folded, enclosing],
            vec![b],
            &mut applied,
        );
    }
    for e in s.boundary_edges() {
        let b = BlockInstance::new(&format!("B_{e}"), BlockKind::I, &[("v", e)]);
        push(Rule::BoundaryLoop, vec![e], vec![b], &mut applied);
    }
    let quiver = GenTriQuiver::assemble(blocks)?;
    if !quiver.is_connected() {
        return Err(Error::Connectivity("surface quiver is disconnected".into()));
    }
    Ok(SurfaceQuiver { quiver, applied })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disc() {
        let s =
            parse_surface("edge a boundary\nedge b boundary\nedge c boundary\ntriangle a b c\n")
                .unwrap();
        let q = surface_to_quiver(&s).unwrap().quiver;
        assert_eq!(q.vertices().len(), 3);
        assert_eq!(q.arrows().len(), 6);
        assert_eq!(q.count_kind(BlockKind::I), 3);
    }

    #[test]
    fn rejections() {
        let e = parse_surface("edge a boundary\nedge b boundary\n").unwrap_err();
        assert!(e.to_string().contains("digon"));
        let e = parse_surface("edge d\nedge c boundary\nselffolded d c marked\n").unwrap_err();
        assert!(e.to_string().contains("boundary enclosing"));
        let e = parse_surface("edge a\nedge b\ntriangle a b\n").unwrap_err();
        assert_eq!(e, parse_err(3, "unrecognized line `triangle a b`"));
    }

    #[test]
    fn isolated_marked_triangle() {
        let s = parse_surface("edge d\nedge c\nselffolded d c marked\nedge e\nselffolded e c\n")
            .unwrap();
        assert!(matches!(surface_to_quiver(&s), Err(Error::Structure(_))));
    }
}
