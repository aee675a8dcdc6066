//! Blocks, gluing and the glued quiver.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    I,
    II,
    III,
    IV,
    V,
}

impl BlockKind {
    pub const ALL: [BlockKind; 5] = [
        BlockKind::I,
        BlockKind::II,
        BlockKind::III,
        BlockKind::IV,
        BlockKind::V,
    ];

    pub fn template(self) -> &'static Template {
        match self {
            BlockKind::I => &T_I,
            BlockKind::II => &T_II,
            BlockKind::III => &T_III,
            BlockKind::IV => &T_IV,
            BlockKind::V => &T_V,
        }
    }

    pub fn outlet_count(self) -> usize {
        self.template().outlets.len()
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BlockKind::I => "I",
            BlockKind::II => "II",
            BlockKind::III => "III",
            BlockKind::IV => "IV",
            BlockKind::V => "V",
        };
        f.write_str(s)
    }
}

impl FromStr for BlockKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" => Ok(BlockKind::I),
            "II" => Ok(BlockKind::II),
            "III" => Ok(BlockKind::III),
            "IV" => Ok(BlockKind::IV),
            "V" => Ok(BlockKind::V),
            other => Err(Error::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    White,
    Black,
}

/// Arrow roles. The first group labels block arrows; the second group names
/// the arrows created by the block replacements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Loop,
    Ab,
    Bc,
    Ca,
    Out,
    In,
    Alpha,
    Tau,
    Beta,
    Nu,
    Delta,
    Epsilon,
    Rho,
    Sigma,
    Eta,
    Psi,
    Omega,
    Gamma,
    Phi,
    Xi,
    Mu,
    XiPrime,
    MuPrime,
    Theta,
    Lambda,
    Kappa,
    Zeta,
    Pi,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Loop => "loop",
            Role::Ab => "ab",
            Role::Bc => "bc",
            Role::Ca => "ca",
            Role::Out => "out",
            Role::In => "in",
            Role::Alpha => "alpha",
            Role::Tau => "tau",
            Role::Beta => "beta",
            Role::Nu => "nu",
            Role::Delta => "delta",
            Role::Epsilon => "epsilon",
            Role::Rho => "rho",
            Role::Sigma => "sigma",
            Role::Eta => "eta",
            Role::Psi => "psi",
            Role::Omega => "omega",
            Role::Gamma => "gamma",
            Role::Phi => "phi",
            Role::Xi => "xi",
            Role::Mu => "mu",
            Role::XiPrime => "xi_prime",
            Role::MuPrime => "mu_prime",
            Role::Theta => "theta",
            Role::Lambda => "lambda",
            Role::Kappa => "kappa",
            Role::Zeta => "zeta",
            Role::Pi => "pi",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Local shape of a block kind.
#[derive(Debug)]
pub struct Template {
    pub vertices: &'static [(&'static str, Color)],
    pub arrows: &'static [(Role, &'static str, &'static str)],
    pub outlets: &'static [&'static str],
    pub marked: Option<[Role; 3]>,
    /// Roles of the arrows surviving in Q*, listed as one f-cycle.
    pub f_cycle: &'static [Role],
    /// Arrow of the marked triangle carrying the star in pictures.
    pub star: Option<Role>,
}

impl Template {
    pub fn arrow(&self, role: Role) -> Option<(&'static str, &'static str)> {
        self.arrows
            .iter()
            .find(|(r, _, _)| *r == role)
            .map(|&(_, s, t)| (s, t))
    }

    pub fn color(&self, local: &str) -> Option<Color> {
        self.vertices
            .iter()
            .find(|(v, _)| *v == local)
            .map(|&(_, c)| c)
    }

    /// Black vertices of the marked triangle.
    pub fn removed_vertices(&self) -> Vec<&'static str> {
        let Some(marked) = self.marked else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for role in marked {
            let (s, _) = self.arrow(role).expect("marked role");
            if self.color(s) == Some(Color::Black) && !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }
}

use Color::{Black as B, White as W};

static T_I: Template = Template {
    vertices: &[("v", W)],
    arrows: &[(Role::Loop, "v", "v")],
    outlets: &["v"],
    marked: None,
    f_cycle: &[Role::Loop],
    star: None,
};

static T_II: Template = Template {
    vertices: &[("a", W), ("b", W), ("c", W)],
    arrows: &[
        (Role::Ab, "a", "b"),
        (Role::Bc, "b", "c"),
        (Role::Ca, "c", "a"),
    ],
    outlets: &["a", "b", "c"],
    marked: None,
    f_cycle: &[Role::Ab, Role::Bc, Role::Ca],
    star: None,
};

static T_III: Template = Template {
    vertices: &[("x", B), ("y", W)],
    arrows: &[
        (Role::Loop, "x", "x"),
        (Role::Out, "x", "y"),
        (Role::In, "y", "x"),
    ],
    outlets: &["y"],
    marked: None,
    f_cycle: &[Role::Loop, Role::Out, Role::In],
    star: None,
};

static T_IV: Template = Template {
    vertices: &[("a", W), ("b", W), ("c", B), ("d", B)],
    arrows: &[
        (Role::Alpha, "c", "a"),
        (Role::Tau, "a", "b"),
        (Role::Beta, "b", "c"),
        (Role::Nu, "b", "d"),
        (Role::Delta, "d", "a"),
    ],
    outlets: &["a", "b"],
    marked: Some([Role::Tau, Role::Beta, Role::Alpha]),
    f_cycle: &[Role::Nu, Role::Delta, Role::Tau],
    star: Some(Role::Tau),
};

static T_V: Template = Template {
    vertices: &[("z", W), ("x1", B), ("x2", B), ("y1", B), ("y2", B)],
    arrows: &[
        (Role::Epsilon, "y2", "y1"),
        (Role::Rho, "y2", "x1"),
        (Role::Sigma, "x2", "x1"),
        (Role::Eta, "x2", "y1"),
        (Role::Psi, "y1", "z"),
        (Role::Omega, "x1", "z"),
        (Role::Gamma, "z", "x2"),
        (Role::Phi, "z", "y2"),
    ],
    outlets: &["z"],
    marked: Some([Role::Sigma, Role::Omega, Role::Gamma]),
    f_cycle: &[Role::Phi, Role::Epsilon, Role::Psi],
    star: Some(Role::Sigma),
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub id: String,
    pub color: Color,
    pub aliases: BTreeSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: String,
    pub target: String,
    pub role: Role,
    pub block: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub kind: BlockKind,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub outlets: Vec<String>,
    pub marked_triangle: Option<[Role; 3]>,
}

pub fn local_id(block: &str, local: &str) -> String {
    format!("{block}:{local}")
}

pub fn build_block(kind: BlockKind, name: &str) -> Block {
    let t = kind.template();
    let vertices = t
        .vertices
        .iter()
        .map(|&(v, color)| {
            let id = local_id(name, v);
            Vertex {
                aliases: BTreeSet::from([id.clone()]),
                id,
                color,
            }
        })
        .collect();
    let arrows = t
        .arrows
        .iter()
        .map(|&(role, s, tg)| Arrow {
            id: local_id(name, role.name()),
            source: local_id(name, s),
            target: local_id(name, tg),
            role,
            block: name.to_string(),
        })
        .collect();
    Block {
        name: name.to_string(),
        kind,
        vertices,
        arrows,
        outlets: t.outlets.iter().map(|v| local_id(name, v)).collect(),
        marked_triangle: t.marked,
    }
}

/// Build a block from a kind given as text.
pub fn build_block_named(kind: &str, name: &str) -> Result<Block> {
    Ok(build_block(kind.parse()?, name))
}

/// Outlet reference: block position and 0-based outlet index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutletRef {
    pub block: usize,
    pub outlet: usize,
}

impl OutletRef {
    pub fn new(block: usize, outlet: usize) -> Self {
        OutletRef { block, outlet }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingSpec {
    pub blocks: Vec<Block>,
    pub pairing: BTreeMap<OutletRef, OutletRef>,
}

impl GluingSpec {
    /// Symmetric pairing from a list of unordered pairs.
    pub fn from_pairs(blocks: Vec<Block>, pairs: &[(OutletRef, OutletRef)]) -> Result<Self> {
        let mut pairing = BTreeMap::new();
        for &(x, y) in pairs {
            for (p, q) in [(x, y), (y, x)] {
                if let Some(prev) = pairing.insert(p, q) {
                    if prev != q || x == y {
                        return Err(Error::Gluing(format!(
                            "outlet {}.{} is paired twice",
                            outlet_label(&blocks, p),
                            p.outlet + 1
                        )));
                    }
                }
            }
        }
        Ok(GluingSpec { blocks, pairing })
    }

    pub fn check(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for b in &self.blocks {
            if !names.insert(b.name.as_str()) {
                return Err(Error::Gluing(format!("duplicate block name `{}`", b.name)));
            }
        }
        let exists = |r: &OutletRef| {
            self.blocks
                .get(r.block)
                .is_some_and(|b| r.outlet < b.outlets.len())
        };
        for (x, y) in &self.pairing {
            if !exists(x) || !exists(y) {
                return Err(Error::Gluing(format!(
                    "pairing references a missing outlet ({}, {})",
                    x.block, x.outlet
                )));
            }
            let label = || format!("{}.{}", self.blocks[x.block].name, x.outlet + 1);
            if x == y {
                return Err(Error::Gluing(format!(
                    "outlet {} is a fixed point",
                    label()
                )));
            }
            if x.block == y.block {
                return Err(Error::Gluing(format!(
                    "outlet {} is paired within its own block",
                    label()
                )));
            }
            if self.pairing.get(y) != Some(x) {
                return Err(Error::Gluing(format!(
                    "pairing is not an involution at {}",
                    label()
                )));
            }
        }
        for (bi, b) in self.blocks.iter().enumerate() {
            for oi in 0..b.outlets.len() {
                if !self.pairing.contains_key(&OutletRef::new(bi, oi)) {
                    return Err(Error::Gluing(format!(
                        "outlet {}.{} is unpaired",
                        b.name,
                        oi + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

fn outlet_label(blocks: &[Block], r: OutletRef) -> String {
    blocks
        .get(r.block)
        .map(|b| b.name.clone())
        .unwrap_or_else(|| format!("#{}", r.block))
}

/// A block placed inside a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockInstance {
    pub name: String,
    pub kind: BlockKind,
    /// local vertex name -> quiver vertex id
    pub vertices: BTreeMap<String, String>,
    /// role -> quiver arrow id
    pub arrows: BTreeMap<Role, String>,
}

impl BlockInstance {
    /// Instance with default arrow ids `<name>:<role>`.
    pub fn new(name: &str, kind: BlockKind, vertices: &[(&str, &str)]) -> Self {
        let arrows = kind
            .template()
            .arrows
            .iter()
            .map(|&(r, _, _)| (r, local_id(name, r.name())))
            .collect();
        BlockInstance {
            name: name.to_string(),
            kind,
            vertices: vertices
                .iter()
                .map(|&(l, g)| (l.to_string(), g.to_string()))
                .collect(),
            arrows,
        }
    }

    pub fn with_arrow(mut self, role: Role, id: &str) -> Self {
        self.arrows.insert(role, id.to_string());
        self
    }

    pub fn vertex(&self, local: &str) -> &str {
        &self.vertices[local]
    }

    pub fn arrow(&self, role: Role) -> &str {
        &self.arrows[&role]
    }

    /// Outlet vertex ids in canonical order.
    pub fn outlet_ids(&self) -> Vec<&str> {
        self.kind
            .template()
            .outlets
            .iter()
            .map(|l| self.vertex(l))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenTriQuiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    blocks: Vec<BlockInstance>,
    vindex: BTreeMap<String, usize>,
    aindex: BTreeMap<String, usize>,
}

impl GenTriQuiver {
    /// Build a quiver from placed blocks. Vertices sharing an id are merged.
    /// Structural checks are left to [`validate`].
    pub fn assemble(blocks: Vec<BlockInstance>) -> Result<Self> {
        let mut vinfo: BTreeMap<String, (Color, BTreeSet<String>)> = BTreeMap::new();
        let mut arrows = Vec::new();
        let mut seen = BTreeSet::new();
        let mut bnames = BTreeSet::new();
        for b in &blocks {
            if !bnames.insert(b.name.clone()) {
                return Err(Error::Invalid(format!("duplicate block name `{}`", b.name)));
            }
            let t = b.kind.template();
            for &(local, color) in t.vertices {
                let Some(id) = b.vertices.get(local) else {
                    return Err(Error::Invalid(format!(
                        "block `{}` lacks vertex `{local}`",
                        b.name
                    )));
                };
                let e = vinfo
                    .entry(id.clone())
                    .or_insert_with(|| (Color::Black, BTreeSet::new()));
                if color == Color::White {
                    e.0 = Color::White;
                }
                e.1.insert(local_id(&b.name, local));
            }
            for &(role, s, tg) in t.arrows {
                let Some(id) = b.arrows.get(&role) else {
                    return Err(Error::Invalid(format!(
                        "block `{}` lacks arrow `{role}`",
                        b.name
                    )));
                };
                if !seen.insert(id.clone()) {
                    return Err(Error::Invalid(format!("duplicate arrow id `{id}`")));
                }
                arrows.push(Arrow {
                    id: id.clone(),
                    source: b.vertices[s].clone(),
                    target: b.vertices[tg].clone(),
                    role,
                    block: b.name.clone(),
                });
            }
        }
        arrows.sort_by(|a, b| a.id.cmp(&b.id));
        let vertices: Vec<Vertex> = vinfo
            .into_iter()
            .map(|(id, (color, aliases))| Vertex { id, color, aliases })
            .collect();
        let vindex = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.clone(), i))
            .collect();
        let aindex = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.clone(), i))
            .collect();
        Ok(GenTriQuiver {
            vertices,
            arrows,
            blocks,
            vindex,
            aindex,
        })
    }

    /// Vertices sorted by id.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Arrows sorted by id.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn blocks(&self) -> &[BlockInstance] {
        &self.blocks
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vindex.get(id).copied()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.aindex.get(id).copied()
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertex_index(id).map(|i| &self.vertices[i])
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrow_index(id).map(|i| &self.arrows[i])
    }

    pub fn block(&self, name: &str) -> Option<&BlockInstance> {
        self.blocks.iter().find(|b| b.name == name)
    }

    pub fn block_index(&self, name: &str) -> Option<usize> {
        self.blocks.iter().position(|b| b.name == name)
    }

    pub fn block_of(&self, arrow: usize) -> &BlockInstance {
        let name = &self.arrows[arrow].block;
        self.block(name).expect("arrow block exists")
    }

    pub fn kind_of(&self, arrow: usize) -> BlockKind {
        self.block_of(arrow).kind
    }

    pub fn source(&self, arrow: usize) -> usize {
        self.vindex[&self.arrows[arrow].source]
    }

    pub fn target(&self, arrow: usize) -> usize {
        self.vindex[&self.arrows[arrow].target]
    }

    /// Arrow index of a block role.
    pub fn role_arrow(&self, block: &BlockInstance, role: Role) -> usize {
        self.aindex[block.arrow(role)]
    }

    pub fn block_decomposition(&self) -> BTreeMap<String, String> {
        self.arrows
            .iter()
            .map(|a| (a.id.clone(), a.block.clone()))
            .collect()
    }

    /// Marked triangles as arrow id triples.
    pub fn marking(&self) -> Vec<[String; 3]> {
        self.blocks
            .iter()
            .filter_map(|b| {
                b.kind
                    .template()
                    .marked
                    .map(|m| m.map(|r| b.arrow(r).to_string()))
            })
            .collect()
    }

    pub fn count_kind(&self, kind: BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind).count()
    }

    /// Vertex ids removed when passing to Q*.
    pub fn removed_vertices(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for b in &self.blocks {
            for l in b.kind.template().removed_vertices() {
                out.insert(b.vertex(l).to_string());
            }
        }
        out
    }

    /// (block index, local name) occurrences of each vertex.
    fn occurrences(&self) -> BTreeMap<&str, Vec<(usize, &'static str)>> {
        let mut occ: BTreeMap<&str, Vec<(usize, &'static str)>> = BTreeMap::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            for &(l, _) in b.kind.template().vertices {
                if let Some(g) = b.vertices.get(l) {
                    occ.entry(g.as_str()).or_default().push((bi, l));
                }
            }
        }
        occ
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for a in 0..self.arrows.len() {
            let (s, t) = (self.source(a), self.target(a));
            adj[s].push(t);
            adj[t].push(s);
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }
}

pub fn glue(spec: &GluingSpec) -> Result<GenTriQuiver> {
    spec.check()?;
    let mut ids: BTreeMap<(usize, &str), String> = BTreeMap::new();
    for (bi, b) in spec.blocks.iter().enumerate() {
        let t = b.kind.template();
        for &(l, _) in t.vertices {
            ids.insert((bi, l), local_id(&b.name, l));
        }
    }
    for (x, y) in &spec.pairing {
        let lx = spec.blocks[x.block].kind.template().outlets[x.outlet];
        let ly = spec.blocks[y.block].kind.template().outlets[y.outlet];
        let a = local_id(&spec.blocks[x.block].name, lx);
        let b = local_id(&spec.blocks[y.block].name, ly);
        ids.insert((x.block, lx), a.clone().min(b));
    }
    let placed: Vec<BlockInstance> = spec
        .blocks
        .iter()
        .enumerate()
        .map(|(bi, b)| {
            let t = b.kind.template();
            let vertices = t
                .vertices
                .iter()
                .map(|&(l, _)| (l.to_string(), ids[&(bi, l)].clone()))
                .collect();
            let arrows = b.arrows.iter().map(|a| (a.role, a.id.clone())).collect();
            BlockInstance {
                name: b.name.clone(),
                kind: b.kind,
                vertices,
                arrows,
            }
        })
        .collect();
    let q = GenTriQuiver::assemble(placed)?;
    if !q.is_connected() {
        return Err(Error::Connectivity(format!(
            "{} blocks do not form one component",
            spec.blocks.len()
        )));
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagnostic {
    pub invariant: String,
    pub subject: String,
}

impl Diagnostic {
    pub fn new(invariant: impl Into<String>, subject: impl Into<String>) -> Self {
        Diagnostic {
            invariant: invariant.into(),
            subject: subject.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.invariant, self.subject)
    }
}

pub fn validate(q: &GenTriQuiver) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if q.vertices.is_empty() {
        out.push(Diagnostic::new("empty quiver", "-"));
        return out;
    }
    for (v, occ) in q.occurrences() {
        let white: Vec<_> = occ
            .iter()
            .filter(|(bi, l)| q.blocks[*bi].kind.template().color(l) == Some(Color::White))
            .collect();
        let black = occ.len() - white.len();
        if black > 0 && !white.is_empty() {
            out.push(Diagnostic::new("color conflict", v));
        } else if black > 1 {
            out.push(Diagnostic::new("black vertex shared between blocks", v));
        } else if white.len() == 1 {
            out.push(Diagnostic::new("unpaired outlet", v));
        } else if white.len() > 2 {
            out.push(Diagnostic::new("outlet glued more than once", v));
        } else if white.len() == 2 && white[0].0 == white[1].0 {
            out.push(Diagnostic::new("outlets of one block glued together", v));
        }
    }
    if !q.is_connected() {
        out.push(Diagnostic::new("not connected", q.vertices[0].id.clone()));
    }
    let removed = q.removed_vertices();
    let mut outdeg = vec![0usize; q.vertices.len()];
    let mut indeg = vec![0usize; q.vertices.len()];
    for (i, a) in q.arrows.iter().enumerate() {
        if removed.contains(&a.source) || removed.contains(&a.target) {
            continue;
        }
        outdeg[q.source(i)] += 1;
        indeg[q.target(i)] += 1;
    }
    for (i, v) in q.vertices.iter().enumerate() {
        if v.color == Color::White && (outdeg[i] != 2 || indeg[i] != 2) {
            out.push(Diagnostic::new(
                "white vertex not 2-regular in Q*",
                format!("{} (in {}, out {})", v.id, indeg[i], outdeg[i]),
            ));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Vertex and arrow bijection between two quivers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

impl Isomorphism {
    pub fn inverse(&self) -> Isomorphism {
        Isomorphism {
            vertices: self
                .vertices
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|(a, b)| (b.clone(), a.clone()))
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().all(|(a, b)| a == b) && self.arrows.iter().all(|(a, b)| a == b)
    }
}

struct IsoData {
    n: usize,
    mult: Vec<usize>,
    sig: Vec<(Color, usize, usize, usize, usize)>,
    marked: Vec<bool>,
    triangles: BTreeSet<[usize; 3]>,
    adj: Vec<Vec<usize>>,
}

impl IsoData {
    fn new(q: &GenTriQuiver) -> Self {
        let n = q.vertices.len();
        let mut mult = vec![0; n * n];
        let mut adj = vec![BTreeSet::new(); n];
        let mut marked = vec![false; q.arrows.len()];
        let mut vmarked = vec![0usize; n];
        let mut triangles = BTreeSet::new();
        for tri in q.marking() {
            let mut idx = tri.map(|id| q.aindex[&id]);
            for &a in &idx {
                marked[a] = true;
                vmarked[q.source(a)] += 1;
            }
            idx.sort();
            triangles.insert(idx);
        }
        let mut outd = vec![0; n];
        let mut ind = vec![0; n];
        let mut loops = vec![0; n];
        for a in 0..q.arrows.len() {
            let (s, t) = (q.source(a), q.target(a));
            mult[s * n + t] += 1;
            outd[s] += 1;
            ind[t] += 1;
            if s == t {
                loops[s] += 1;
            }
            adj[s].insert(t);
            adj[t].insert(s);
        }
        let sig = (0..n)
            .map(|i| (q.vertices[i].color, outd[i], ind[i], loops[i], vmarked[i]))
            .collect();
        IsoData {
            n,
            mult,
            sig,
            marked,
            triangles,
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }
}

/// Search for an isomorphism preserving sources, targets, colors and the
/// set of marked triangles. Candidates with equal ids are tried first.
pub fn quiver_isomorphic(q1: &GenTriQuiver, q2: &GenTriQuiver) -> Option<Isomorphism> {
    if q1.vertices.len() != q2.vertices.len()
        || q1.arrows.len() != q2.arrows.len()
        || q1.marking().len() != q2.marking().len()
    {
        return None;
    }
    let d1 = IsoData::new(q1);
    let d2 = IsoData::new(q2);
    let mut s1 = d1.sig.clone();
    let mut s2 = d2.sig.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return None;
    }
    if d1.n == 0 {
        return Some(Isomorphism {
            vertices: BTreeMap::new(),
            arrows: BTreeMap::new(),
        });
    }
    // BFS order keeps each new vertex adjacent to mapped ones.
    let mut order = Vec::new();
    let mut seen = vec![false; d1.n];
    for start in 0..d1.n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &d1.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut search = IsoSearch {
        q1,
        q2,
        d1: &d1,
        d2: &d2,
        order,
        map: vec![usize::MAX; d1.n],
        used: vec![false; d1.n],
    };
    search.vertex_step(0)
}

struct IsoSearch<'a> {
    q1: &'a GenTriQuiver,
    q2: &'a GenTriQuiver,
    d1: &'a IsoData,
    d2: &'a IsoData,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn candidates(&self, v: usize) -> Vec<usize> {
        let id = &self.q1.vertices[v].id;
        let mut c: Vec<usize> = (0..self.d2.n)
            .filter(|&w| !self.used[w] && self.d1.sig[v] == self.d2.sig[w])
            .collect();
        if let Some(p) = c.iter().position(|&w| &self.q2.vertices[w].id == id) {
            let w = c.remove(p);
            c.insert(0, w);
        }
        c
    }

    fn consistent(&self, v: usize, w: usize) -> bool {
        let (n, m1, m2) = (self.d1.n, &self.d1.mult, &self.d2.mult);
        if m1[v * n + v] != m2[w * n + w] {
            return false;
        }
        for u in 0..n {
            let x = self.map[u];
            if x == usize::MAX || u == v {
                continue;
            }
            if m1[v * n + u] != m2[w * n + x] || m1[u * n + v] != m2[x * n + w] {
                return false;
            }
        }
        true
    }

    fn vertex_step(&mut self, k: usize) -> Option<Isomorphism> {
        if k == self.order.len() {
            return self.match_arrows();
        }
        let v = self.order[k];
        for w in self.candidates(v) {
            if !self.consistent(v, w) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if let Some(iso) = self.vertex_step(k + 1) {
                return Some(iso);
            }
            self.map[v] = usize::MAX;
            self.used[w] = false;
        }
        None
    }

    fn match_arrows(&self) -> Option<Isomorphism> {
        let (q1, q2) = (self.q1, self.q2);
        let mut groups2: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for a in 0..q2.arrows.len() {
            groups2
                .entry((q2.source(a), q2.target(a)))
                .or_default()
                .push(a);
        }
        let pending: Vec<(usize, Vec<usize>)> = (0..q1.arrows.len())
            .map(|a| {
                let key = (self.map[q1.source(a)], self.map[q1.target(a)]);
                let mut c = groups2.get(&key).cloned().unwrap_or_default();
                c.retain(|&b| self.d1.marked[a] == self.d2.marked[b]);
                if let Some(p) = c.iter().position(|&b| q2.arrows[b].id == q1.arrows[a].id) {
                    let b = c.remove(p);
                    c.insert(0, b);
                }
                (a, c)
            })
            .collect();
        let mut amap = vec![usize::MAX; q1.arrows.len()];
        let mut used = vec![false; q2.arrows.len()];
        if !self.arrow_step(&pending, 0, &mut amap, &mut used) {
            return None;
        }
        Some(Isomorphism {
            vertices: (0..self.d1.n)
                .map(|v| {
                    (
                        q1.vertices[v].id.clone(),
                        q2.vertices[self.map[v]].id.clone(),
                    )
                })
                .collect(),
            arrows: (0..q1.arrows.len())
                .map(|a| (q1.arrows[a].id.clone(), q2.arrows[amap[a]].id.clone()))
                .collect(),
        })
    }

    fn arrow_step(
        &self,
        pending: &[(usize, Vec<usize>)],
        k: usize,
        amap: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == pending.len() {
            return self.d1.triangles.iter().all(|tri| {
                let mut img = tri.map(|a| amap[a]);
                img.sort();
                self.d2.triangles.contains(&img)
            });
        }
        let (a, cands) = &pending[k];
        for &b in cands {
            if used[b] {
                continue;
            }
            used[b] = true;
            amap[*a] = b;
            if self.arrow_step(pending, k + 1, amap, used) {
                return true;
            }
            used[b] = false;
        }
        false
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn export_dot(q: &GenTriQuiver) -> String {
    let mut starred = BTreeSet::new();
    for b in &q.blocks {
        if let Some(r) = b.kind.template().star {
            starred.insert(b.arrow(r).to_string());
        }
    }
    let mut out = String::from("digraph Q {\n");
    for v in &q.vertices {
        let style = match v.color {
            Color::White => "shape=circle",
            Color::Black => "shape=circle, style=filled, fillcolor=black, fontcolor=white",
        };
        out.push_str(&format!("  {} [{style}];\n", dot_quote(&v.id)));
    }
    for a in &q.arrows {
        let label = if starred.contains(&a.id) {
            format!("{} *", a.id)
        } else {
            a.id.clone()
        };
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            dot_quote(&a.source),
            dot_quote(&a.target),
            dot_quote(&label)
        ));
    }
    out.push_str("}\n");
    out
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '\'')
}

pub fn parse_gtq(text: &str) -> Result<GluingSpec> {
    use crate::error::parse_err;
    let mut blocks: Vec<Block> = Vec::new();
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["block", name, "type", kind] => {
                if !valid_name(name) {
                    return Err(parse_err(line_no, format!("invalid block name `{name}`")));
                }
                if blocks.iter().any(|b| b.name == *name) {
                    return Err(parse_err(line_no, format!("duplicate block `{name}`")));
                }
                let kind: BlockKind = kind
                    .parse()
                    .map_err(|e: Error| parse_err(line_no, e.to_string()))?;
                blocks.push(build_block(kind, name));
            }
            ["glue", x, y] => {
                let rx = parse_outlet(&blocks, x).map_err(|m| parse_err(line_no, m))?;
                let ry = parse_outlet(&blocks, y).map_err(|m| parse_err(line_no, m))?;
                pairs.push((line_no, rx, ry));
            }
            _ => return Err(parse_err(line_no, format!("unrecognized line `{line}`"))),
        }
    }
    let mut pairing = BTreeMap::new();
    for (line_no, x, y) in pairs {
        for (p, q) in [(x, y), (y, x)] {
            if pairing.insert(p, q).is_some() {
                return Err(parse_err(line_no, "outlet glued more than once"));
            }
        }
    }
    Ok(GluingSpec { blocks, pairing })
}

fn parse_outlet(blocks: &[Block], tok: &str) -> std::result::Result<OutletRef, String> {
    let (name, idx) = tok
        .rsplit_once('.')
        .ok_or_else(|| format!("expected <block>.<outlet>, got `{tok}`"))?;
    let bi = blocks
        .iter()
        .position(|b| b.name == name)
        .ok_or_else(|| format!("unknown block `{name}`"))?;
    let k: usize = idx
        .parse()
        .map_err(|_| format!("invalid outlet index `{idx}`"))?;
    if k == 0 || k > blocks[bi].outlets.len() {
        return Err(format!("block `{name}` has no outlet {k}"));
    }
    Ok(OutletRef::new(bi, k - 1))
}

pub fn load_gtq(text: &str) -> Result<GenTriQuiver> {
    glue(&parse_gtq(text)?)
}

/// Render a quiver as gluing text. Arrows whose id differs from the
/// default `<block>:<role>` are listed in comments.
pub fn render_gtq(q: &GenTriQuiver) -> String {
    let mut out = String::new();
    for b in &q.blocks {
        out.push_str(&format!("block {} type {}\n", b.name, b.kind));
    }
    let mut occ: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
    for (bi, b) in q.blocks.iter().enumerate() {
        for (oi, v) in b.outlet_ids().into_iter().enumerate() {
            occ.entry(v).or_default().push((bi, oi));
        }
    }
    let mut glues: Vec<((usize, usize), (usize, usize))> = occ
        .values()
        .filter(|o| o.len() == 2)
        .map(|o| (o[0].min(o[1]), o[0].max(o[1])))
        .collect();
    glues.sort();
    for ((b1, o1), (b2, o2)) in glues {
        out.push_str(&format!(
            "glue {}.{} {}.{}\n",
            q.blocks[b1].name,
            o1 + 1,
            q.blocks[b2].name,
            o2 + 1
        ));
    }
    for b in &q.blocks {
        for (r, id) in &b.arrows {
            if *id != local_id(&b.name, r.name()) {
                out.push_str(&format!(
                    "# arrow {} = {}\n",
                    id,
                    local_id(&b.name, r.name())
                ));
            }
        }
    }
    out
}
