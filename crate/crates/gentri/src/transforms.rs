//! The block replacement Λ → Λ^Δ, the two mutation stages and the round trip.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::quiver::{
    local_id, quiver_isomorphic, validate, BlockInstance, BlockKind, GenTriQuiver, Isomorphism,
    Role,
};
use crate::star::{orbit_data, star_quiver, OrbitData, StarQuiver};
use crate::weights::{validate_weights, Multiplicity, Scalar, WeightData, Weighted};

/// Block of the source quiver an arrow descends from, with its template role.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArrowOrigin {
    pub block: String,
    pub kind: BlockKind,
    pub role: Role,
}

pub type Origins = BTreeMap<String, ArrowOrigin>;

#[derive(Clone, Debug)]
pub struct DeltaResult {
    pub quiver: GenTriQuiver,
    pub arrow_origin: Origins,
    pub weights: WeightData,
    pub source: GenTriQuiver,
    pub source_weights: WeightData,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    One,
    Two,
}

/// The B′ region replacing a type V block after stage 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub block: String,
    /// Name of the type II block (ψ ζ κ).
    pub two: String,
    /// Name of the type IV block marked at π.
    pub four: String,
    pub lambda: String,
    pub epsilon: String,
    pub psi: String,
    pub theta: String,
    pub eta: String,
    pub zeta: String,
    pub kappa: String,
    pub pi: String,
}

#[derive(Clone, Debug)]
pub struct MutationResult {
    pub quiver: GenTriQuiver,
    pub weights: WeightData,
    pub stage: Stage,
    pub virtual_sequence: Vec<String>,
    pub arrow_origin: Origins,
    pub source: GenTriQuiver,
    regions: Vec<Region>,
    /// Stage 2: each rewritten arrow with the Q″ morphism it comes from.
    pub hat: Vec<(String, String)>,
}

impl MutationResult {
    pub fn regions(&self) -> Vec<Region> {
        self.regions.clone()
    }
}

fn find_origin(origins: &Origins, block: &str, role: Role) -> Option<String> {
    origins
        .iter()
        .find(|(_, o)| o.block == block && o.role == role)
        .map(|(id, _)| id.clone())
}

fn origin_of(origins: &Origins, block: &str, role: Role) -> Result<String> {
    find_origin(origins, block, role)
        .ok_or_else(|| Error::Invalid(format!("no arrow `{role}` descends from block `{block}`")))
}

fn tag(origins: &mut Origins, id: &str, block: &BlockInstance, kind: BlockKind, role: Role) {
    origins.insert(
        id.to_string(),
        ArrowOrigin {
            block: block.name.clone(),
            kind,
            role,
        },
    );
}

/// Weights of an orbit in a reference quiver, looked up through an arrow id.
struct Lookup<'a> {
    q: &'a GenTriQuiver,
    od: OrbitData,
    w: &'a WeightData,
}

impl<'a> Lookup<'a> {
    fn new(sq: &StarQuiver<'a>, w: &'a WeightData) -> Self {
        Lookup {
            q: sq.base,
            od: orbit_data(sq),
            w,
        }
    }

    fn get(&self, arrow: &str) -> Option<(Multiplicity, Scalar)> {
        let o = self.od.orbit_by_rep(self.q, arrow)?;
        let rep = &self.q.arrows()[self.od.rep(o)].id;
        Some((self.w.m.get(rep)?.clone(), self.w.c.get(rep)?.clone()))
    }
}

/// Assign m and c to each orbit of `target` via `pick`, which returns the
/// arrow of the reference quiver whose orbit supplies the values.
fn transport<F>(target: &GenTriQuiver, tod: &OrbitData, pick: F) -> Result<WeightData>
where
    F: Fn(&str) -> Option<Result<(Multiplicity, Scalar)>>,
{
    let mut w = WeightData::default();
    for (o, orbit) in tod.g_orbits.iter().enumerate() {
        let mut found: Option<(Multiplicity, Scalar)> = None;
        for &a in orbit {
            let Some(v) = pick(&target.arrows()[a].id) else {
                continue;
            };
            let v = v?;
            match &found {
                None => found = Some(v),
                Some(prev) if *prev != v => {
                    return Err(Error::Weight(format!(
                        "conflicting weights transported onto the orbit of {}",
                        target.arrows()[tod.rep(o)].id
                    )))
                }
                _ => {}
            }
        }
        let (m, c) = found.ok_or_else(|| {
            Error::Weight(format!(
                "no weight transported onto the orbit of {}",
                target.arrows()[tod.rep(o)].id
            ))
        })?;
        let rep = target.arrows()[tod.rep(o)].id.clone();
        w.m.insert(rep.clone(), m);
        w.c.insert(rep, c);
    }
    Ok(w)
}

pub fn delta_construction(sq: &StarQuiver, od: &OrbitData, w: &WeightData) -> Result<DeltaResult> {
    let q = sq.base;
    let mut blocks = Vec::new();
    let mut origins = Origins::new();
    for b in q.blocks() {
        let v = |l: &str| b.vertex(l).to_string();
        let new_id = |r: Role| local_id(&b.name, r.name());
        match b.kind {
            BlockKind::I | BlockKind::II | BlockKind::III => {
                for (r, id) in &b.arrows {
                    tag(&mut origins, id, b, b.kind, *r);
                }
                blocks.push(b.clone());
            }
            BlockKind::IV => {
                let (a, bb, c, d) = (v("a"), v("b"), v("c"), v("d"));
                let p1 = BlockInstance::new(
                    &format!("{}_d1", b.name),
                    BlockKind::II,
                    &[("a", &a), ("b", &c), ("c", &d)],
                )
                .with_arrow(Role::Ab, b.arrow(Role::Alpha))
                .with_arrow(Role::Bc, &new_id(Role::Xi))
                .with_arrow(Role::Ca, b.arrow(Role::Delta));
                let p2 = BlockInstance::new(
                    &format!("{}_d2", b.name),
                    BlockKind::II,
                    &[("a", &c), ("b", &bb), ("c", &d)],
                )
                .with_arrow(Role::Ab, b.arrow(Role::Beta))
                .with_arrow(Role::Bc, b.arrow(Role::Nu))
                .with_arrow(Role::Ca, &new_id(Role::Mu));
                for r in [Role::Alpha, Role::Delta, Role::Beta, Role::Nu] {
                    tag(&mut origins, b.arrow(r), b, BlockKind::IV, r);
                }
                tag(&mut origins, &new_id(Role::Xi), b, BlockKind::IV, Role::Xi);
                tag(&mut origins, &new_id(Role::Mu), b, BlockKind::IV, Role::Mu);
                blocks.push(p1);
                blocks.push(p2);
            }
            BlockKind::V => {
                let (z, x1, x2, y1, y2) = (v("z"), v("x1"), v("x2"), v("y1"), v("y2"));
                let p1 = BlockInstance::new(
                    &format!("{}_d1", b.name),
                    BlockKind::II,
                    &[("a", &y1), ("b", &x2), ("c", &y2)],
                )
                .with_arrow(Role::Ab, b.arrow(Role::Eta))
                .with_arrow(Role::Bc, &new_id(Role::XiPrime))
                .with_arrow(Role::Ca, b.arrow(Role::Epsilon));
                let p2 = BlockInstance::new(
                    &format!("{}_d2", b.name),
                    BlockKind::II,
                    &[("a", &x2), ("b", &x1), ("c", &y2)],
                )
                .with_arrow(Role::Ab, &new_id(Role::Theta))
                .with_arrow(Role::Bc, &new_id(Role::Lambda))
                .with_arrow(Role::Ca, &new_id(Role::MuPrime));
                let p3 = BlockInstance::new(
                    &format!("{}_d3", b.name),
                    BlockKind::II,
                    &[("a", &y1), ("b", &z), ("c", &x1)],
                )
                .with_arrow(Role::Ab, b.arrow(Role::Psi))
                .with_arrow(Role::Bc, &new_id(Role::Zeta))
                .with_arrow(Role::Ca, &new_id(Role::Kappa));
                for r in [Role::Eta, Role::Epsilon, Role::Psi] {
                    tag(&mut origins, b.arrow(r), b, BlockKind::V, r);
                }
                for r in [
                    Role::XiPrime,
                    Role::MuPrime,
                    Role::Theta,
                    Role::Lambda,
                    Role::Zeta,
                    Role::Kappa,
                ] {
                    tag(&mut origins, &new_id(r), b, BlockKind::V, r);
                }
                blocks.extend([p1, p2, p3]);
            }
        }
    }
    let quiver = GenTriQuiver::assemble(blocks)?;
    let dsq = star_quiver(&quiver)?;
    let dod = orbit_data(&dsq);
    let src = Lookup {
        q,
        od: od.clone(),
        w,
    };
    let one = (Multiplicity::Value(1), Scalar::int(1));
    let mut weights = transport(&quiver, &dod, |id| {
        let o = &origins[id];
        match (o.kind, o.role) {
            (BlockKind::IV, Role::Xi | Role::Mu)
            | (
                BlockKind::V,
                Role::XiPrime | Role::MuPrime | Role::Theta | Role::Kappa | Role::Eta,
            ) => Some(Ok(one.clone())),
            (BlockKind::IV, Role::Alpha) => {
                let tau = q.block(&o.block)?.arrow(Role::Tau);
                Some(
                    src.get(tau)
                        .ok_or_else(|| Error::Weight(format!("no weight at {tau}"))),
                )
            }
            (BlockKind::IV, Role::Beta) | (BlockKind::V, Role::Zeta | Role::Lambda) => None,
            _ => Some(
                src.get(id)
                    .ok_or_else(|| Error::Weight(format!("no weight at {id}"))),
            ),
        }
    })?;
    weights.b = w.b.clone();
    Ok(DeltaResult {
        quiver,
        arrow_origin: origins,
        weights,
        source: q.clone(),
        source_weights: w.clone(),
    })
}

pub fn virtual_sequence(d: &DeltaResult) -> Vec<String> {
    let mut four = Vec::new();
    let mut five = Vec::new();
    for b in d.source.blocks() {
        match b.kind {
            BlockKind::IV => four.extend(find_origin(&d.arrow_origin, &b.name, Role::Xi)),
            BlockKind::V => five.extend(find_origin(&d.arrow_origin, &b.name, Role::XiPrime)),
            _ => {}
        }
    }
    four.extend(five);
    four
}

pub fn detect_exceptional(d: &DeltaResult) -> Vec<String> {
    let q = &d.source;
    let special = q.count_kind(BlockKind::IV) + q.count_kind(BlockKind::V);
    if special == 0 {
        return vec!["singular disc, triangle and tetrahedral algebras: not checked".into()];
    }
    let blocks = q.blocks();
    let spherical = blocks.len() == 2
        && blocks.iter().all(|b| b.kind == BlockKind::IV)
        && blocks[0].vertex("a") == blocks[1].vertex("b")
        && blocks[0].vertex("b") == blocks[1].vertex("a");
    if !spherical {
        return Vec::new();
    }
    let Ok(sq) = star_quiver(q) else {
        return vec!["spherical shape: star quiver unavailable".into()];
    };
    let od = orbit_data(&sq);
    let wq = Weighted::new(&sq, &od, &d.source_weights);
    let tau = q.role_arrow(&blocks[0], Role::Tau);
    let delta = q.role_arrow(&blocks[0], Role::Delta);
    let m = wq.m(tau).ok().cloned();
    if m.as_ref().is_some_and(|m| m.lower() >= 2) {
        return Vec::new();
    }
    let product = match (wq.c(delta), wq.c(tau)) {
        (Ok(Scalar::Value(a)), Ok(Scalar::Value(b))) => Some(a * b),
        _ => None,
    };
    let minus_one = -num_rational::BigRational::from_integer(1.into());
    let head = "spherical shape: two type IV blocks with opposed middle arrows".to_string();
    match (m, product) {
        (_, Some(p)) if p != minus_one => Vec::new(),
        (Some(Multiplicity::Value(1)), Some(_)) => {
            vec![head, "singular: m_tau1 = 1 and c_delta1*c_tau1 = -1".into()]
        }
        _ => vec![
            head,
            "singularity condition c_delta1*c_tau1 != -1 unverifiable".into(),
        ],
    }
}

pub fn mutate_stage1(d: &DeltaResult) -> Result<MutationResult> {
    let dq = &d.quiver;
    let src = &d.source;
    let o = &d.arrow_origin;
    let mut blocks = Vec::new();
    let mut origins = Origins::new();
    let mut regions = Vec::new();
    let mut special: BTreeMap<String, String> = BTreeMap::new();
    for b in src.blocks() {
        match b.kind {
            BlockKind::I | BlockKind::II | BlockKind::III => {
                let kept = dq
                    .block(&b.name)
                    .ok_or_else(|| Error::Invalid(format!("block `{}` missing", b.name)))?;
                for (r, id) in &kept.arrows {
                    tag(&mut origins, id, kept, kept.kind, *r);
                }
                blocks.push(kept.clone());
            }
            BlockKind::IV => {
                let mut inst = BlockInstance {
                    name: b.name.clone(),
                    kind: BlockKind::IV,
                    vertices: b.vertices.clone(),
                    arrows: BTreeMap::new(),
                };
                for r in [Role::Alpha, Role::Beta, Role::Nu, Role::Delta] {
                    inst.arrows.insert(r, origin_of(o, &b.name, r)?);
                }
                inst.arrows
                    .insert(Role::Tau, b.arrow(Role::Tau).to_string());
                special.insert(
                    b.arrow(Role::Tau).to_string(),
                    origin_of(o, &b.name, Role::Alpha)?,
                );
                for (r, id) in &inst.arrows {
                    tag(&mut origins, id, b, BlockKind::IV, *r);
                }
                blocks.push(inst);
            }
            BlockKind::V => {
                let v = |l: &str| b.vertex(l).to_string();
                let get = |r| origin_of(o, &b.name, r);
                let region = Region {
                    block: b.name.clone(),
                    two: format!("{}_m1", b.name),
                    four: format!("{}_m2", b.name),
                    lambda: get(Role::Lambda)?,
                    epsilon: get(Role::Epsilon)?,
                    psi: get(Role::Psi)?,
                    theta: get(Role::Theta)?,
                    eta: get(Role::Eta)?,
                    zeta: get(Role::Zeta)?,
                    kappa: get(Role::Kappa)?,
                    pi: local_id(&b.name, Role::Pi.name()),
                };
                let two = BlockInstance::new(
                    &region.two,
                    BlockKind::II,
                    &[("a", &v("y1")), ("b", &v("z")), ("c", &v("x1"))],
                )
                .with_arrow(Role::Ab, &region.psi)
                .with_arrow(Role::Bc, &region.zeta)
                .with_arrow(Role::Ca, &region.kappa);
                let four = BlockInstance::new(
                    &region.four,
                    BlockKind::IV,
                    &[
                        ("a", &v("y1")),
                        ("b", &v("x1")),
                        ("c", &v("x2")),
                        ("d", &v("y2")),
                    ],
                )
                .with_arrow(Role::Alpha, &region.eta)
                .with_arrow(Role::Tau, &region.pi)
                .with_arrow(Role::Beta, &region.theta)
                .with_arrow(Role::Nu, &region.lambda)
                .with_arrow(Role::Delta, &region.epsilon);
                for (id, r) in [
                    (&region.psi, Role::Psi),
                    (&region.zeta, Role::Zeta),
                    (&region.kappa, Role::Kappa),
                    (&region.eta, Role::Eta),
                    (&region.pi, Role::Pi),
                    (&region.theta, Role::Theta),
                    (&region.lambda, Role::Lambda),
                    (&region.epsilon, Role::Epsilon),
                ] {
                    tag(&mut origins, id, b, BlockKind::V, r);
                }
                special.insert(region.pi.clone(), region.eta.clone());
                blocks.push(two);
                blocks.push(four);
                regions.push(region);
            }
        }
    }
    let quiver = GenTriQuiver::assemble(blocks)?;
    let qsq = star_quiver(&quiver)?;
    let qod = orbit_data(&qsq);
    let dsq = star_quiver(dq)?;
    let delta = Lookup::new(&dsq, &d.weights);
    let mut weights = transport(&quiver, &qod, |id| {
        let source_arrow = special.get(id).map(String::as_str).unwrap_or(id);
        delta.get(source_arrow).map(Ok)
    })?;
    weights.b = d.weights.b.clone();
    Ok(MutationResult {
        quiver,
        weights,
        stage: Stage::One,
        virtual_sequence: virtual_sequence(d),
        arrow_origin: origins,
        source: src.clone(),
        regions,
        hat: Vec::new(),
    })
}

pub fn mutate_stage2(m1: &MutationResult) -> Result<MutationResult> {
    if m1.stage != Stage::One {
        return Err(Error::Stage("stage 2 expects a stage-1 result".into()));
    }
    if m1.regions.is_empty() {
        let mut out = m1.clone();
        out.stage = Stage::Two;
        return Ok(out);
    }
    let q1 = &m1.quiver;
    let mut blocks = Vec::new();
    let mut origins = Origins::new();
    let mut hat = Vec::new();
    let mut done = BTreeSet::new();
    // final arrow id -> Q′ arrow whose orbit carries its weight
    let mut carrier: BTreeMap<String, String> = BTreeMap::new();
    for b in q1.blocks() {
        let Some(region) = m1
            .regions
            .iter()
            .find(|r| r.two == b.name || r.four == b.name)
        else {
            for (r, id) in &b.arrows {
                if let Some(o) = m1.arrow_origin.get(id) {
                    origins.insert(id.clone(), o.clone());
                } else {
                    tag(&mut origins, id, b, b.kind, *r);
                }
            }
            blocks.push(b.clone());
            continue;
        };
        if !done.insert(region.block.clone()) {
            continue;
        }
        let two = q1
            .block(&region.two)
            .ok_or_else(|| Error::Invalid("region block".into()))?;
        let four = q1
            .block(&region.four)
            .ok_or_else(|| Error::Invalid("region block".into()))?;
        let source_block = m1.source.block(&region.block);
        let name_of = |r: Role| {
            source_block
                .and_then(|sb| sb.arrows.get(&r).cloned())
                .unwrap_or_else(|| local_id(&region.block, r.name()))
        };
        let inst = BlockInstance {
            name: region.block.clone(),
            kind: BlockKind::V,
            vertices: [
                ("z", two.vertex("b")),
                ("x1", two.vertex("c")),
                ("y1", two.vertex("a")),
                ("x2", four.vertex("c")),
                ("y2", four.vertex("d")),
            ]
            .iter()
            .map(|(l, g)| (l.to_string(), g.to_string()))
            .collect(),
            arrows: [
                (Role::Epsilon, region.epsilon.clone()),
                (Role::Eta, region.eta.clone()),
                (Role::Psi, region.psi.clone()),
                (Role::Gamma, name_of(Role::Gamma)),
                (Role::Phi, name_of(Role::Phi)),
                (Role::Omega, name_of(Role::Omega)),
                (Role::Sigma, name_of(Role::Sigma)),
                (Role::Rho, name_of(Role::Rho)),
            ]
            .into_iter()
            .collect(),
        };
        let (zeta, theta, lambda, eta, psi, eps) = (
            &region.zeta,
            &region.theta,
            &region.lambda,
            &region.eta,
            &region.psi,
            &region.epsilon,
        );
        let rows = [
            (Role::Gamma, format!("{zeta}.{theta}")),
            (Role::Phi, format!("{zeta}.{lambda}")),
            (Role::Omega, format!("e_{}", two.vertex("b"))),
            (Role::Sigma, format!("{eta}.{psi}")),
            (Role::Rho, format!("{eps}.{psi} - c'_{eps}*A'_{eps}")),
            (Role::Eta, eta.clone()),
            (Role::Epsilon, eps.clone()),
            (Role::Psi, psi.clone()),
        ];
        for (r, expr) in rows {
            hat.push((inst.arrow(r).to_string(), expr));
        }
        for (r, id) in &inst.arrows {
            tag(&mut origins, id, &inst, BlockKind::V, *r);
        }
        carrier.insert(inst.arrow(Role::Phi).to_string(), zeta.clone());
        blocks.push(inst);
    }
    let quiver = GenTriQuiver::assemble(blocks)?;
    let qsq = star_quiver(&quiver)?;
    let qod = orbit_data(&qsq);
    let psq = star_quiver(q1)?;
    let prev = Lookup::new(&psq, &m1.weights);
    let mut weights = transport(&quiver, &qod, |id| {
        let src = carrier.get(id).map(String::as_str).unwrap_or(id);
        prev.get(src).map(Ok)
    })?;
    weights.b = m1.weights.b.clone();
    Ok(MutationResult {
        quiver,
        weights,
        stage: Stage::Two,
        virtual_sequence: m1.virtual_sequence.clone(),
        arrow_origin: origins,
        source: m1.source.clone(),
        regions: Vec::new(),
        hat,
    })
}

#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub passed: bool,
    pub lines: Vec<String>,
    pub witness: Option<Isomorphism>,
}

impl RoundtripReport {
    pub fn render(&self) -> String {
        let mut out: String = self.lines.iter().map(|l| format!("{l}\n")).collect();
        if let Some(iso) = &self.witness {
            out.push_str("witness:\n");
            for (a, b) in &iso.vertices {
                out.push_str(&format!("  vertex {a} -> {b}\n"));
            }
            for (a, b) in &iso.arrows {
                out.push_str(&format!("  arrow {a} -> {b}\n"));
            }
        }
        out
    }
}

fn border_of(q: &GenTriQuiver) -> Result<BTreeSet<String>> {
    let sq = star_quiver(q)?;
    Ok(orbit_data(&sq).border)
}

/// Run Δ, stage 1 and stage 2 and compare the result with the input.
pub fn roundtrip_check(q: &GenTriQuiver, w: &WeightData) -> RoundtripReport {
    let mut lines = Vec::new();
    match roundtrip_inner(q, w, &mut lines) {
        Ok(witness) => RoundtripReport {
            passed: witness.is_some(),
            lines,
            witness,
        },
        Err(e) => {
            lines.push(format!("FAIL: {e}"));
            RoundtripReport {
                passed: false,
                lines,
                witness: None,
            }
        }
    }
}

fn roundtrip_inner(
    q: &GenTriQuiver,
    w: &WeightData,
    lines: &mut Vec<String>,
) -> Result<Option<Isomorphism>> {
    let fail = |lines: &mut Vec<String>, msg: String| {
        lines.push(format!("FAIL: {msg}"));
        Ok(None)
    };
    if let Some(d) = validate(q).first() {
        return fail(lines, format!("input quiver invalid ({d})"));
    }
    let sq = star_quiver(q)?;
    let od = orbit_data(&sq);
    let hard: Vec<_> = validate_weights(&sq, &od, w)
        .into_iter()
        .filter(|d| !d.invariant.starts_with("cannot verify"))
        .collect();
    if let Some(d) = hard.first() {
        return fail(lines, format!("weights invalid ({d})"));
    }
    let border = od.border.clone();

    let d = delta_construction(&sq, &od, w)?;
    let dq = &d.quiver;
    let regular = (0..dq.vertices().len()).all(|v| {
        let outd = (0..dq.arrows().len())
            .filter(|&a| dq.source(a) == v)
            .count();
        let ind = (0..dq.arrows().len())
            .filter(|&a| dq.target(a) == v)
            .count();
        outd == 2 && ind == 2
    });
    if !regular || dq.vertices().len() != q.vertices().len() {
        return fail(
            lines,
            "Q^Delta is not a 2-regular quiver on the same vertices".into(),
        );
    }
    if border_of(dq)? != border {
        return fail(lines, "border changed by the Delta construction".into());
    }
    lines.push(format!(
        "ok: Q^Delta has {} vertices and {} arrows",
        dq.vertices().len(),
        dq.arrows().len()
    ));

    let m1 = mutate_stage1(&d)?;
    if let Some(diag) = validate(&m1.quiver).first() {
        return fail(lines, format!("stage-1 quiver invalid ({diag})"));
    }
    if border_of(&m1.quiver)? != border {
        return fail(lines, "border changed by stage 1".into());
    }
    lines.push(format!(
        "ok: stage 1 virtual sequence ({})",
        m1.virtual_sequence.join(" ")
    ));

    let m2 = mutate_stage2(&m1)?;
    if let Some(diag) = validate(&m2.quiver).first() {
        return fail(lines, format!("stage-2 quiver invalid ({diag})"));
    }
    if border_of(&m2.quiver)? != border {
        return fail(lines, "border changed by stage 2".into());
    }
    let Some(iso) = quiver_isomorphic(q, &m2.quiver) else {
        return fail(
            lines,
            "no isomorphism between input and stage-2 quiver".into(),
        );
    };
    lines.push("ok: marking preserved under the witness".into());

    let fsq = star_quiver(&m2.quiver)?;
    let fod = orbit_data(&fsq);
    let a = Weighted::new(&sq, &od, w);
    let b = Weighted::new(&fsq, &fod, &m2.weights);
    for &x in &sq.arrows {
        let y = m2
            .quiver
            .arrow_index(&iso.arrows[&q.arrows()[x].id])
            .expect("witness arrow");
        if !fsq.contains(y) {
            return fail(lines, format!("{} leaves Q* under the witness", a.id(x)));
        }
        if a.m(x)? != b.m(y)? || a.c(x)? != b.c(y)? {
            return fail(
                lines,
                format!("weights differ on the orbit of {} and {}", a.id(x), b.id(y)),
            );
        }
    }
    for v in &border {
        if a.b(v) != b.b(&iso.vertices[v]) {
            return fail(lines, format!("border value differs at {v}"));
        }
    }
    lines.push("ok: weights, parameters and border values preserved".into());
    lines.push("PASS: isomorphism found".into());
    Ok(Some(iso))
}
