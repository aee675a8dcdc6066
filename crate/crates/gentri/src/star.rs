//! Q*, the permutations f, bar, g and their orbits.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::quiver::{BlockKind, GenTriQuiver, Role};

/// Q* with its permutations. Arrows and vertices are indices into the base.
#[derive(Clone, Debug)]
pub struct StarQuiver<'a> {
    pub base: &'a GenTriQuiver,
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
    f: BTreeMap<usize, usize>,
    bar: BTreeMap<usize, usize>,
    g: BTreeMap<usize, usize>,
}

impl StarQuiver<'_> {
    pub fn f(&self, a: usize) -> usize {
        self.f[&a]
    }

    pub fn bar(&self, a: usize) -> usize {
        self.bar[&a]
    }

    pub fn g(&self, a: usize) -> usize {
        self.g[&a]
    }

    pub fn contains(&self, a: usize) -> bool {
        self.f.contains_key(&a)
    }

    /// Q* arrows starting at vertex `v`.
    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        self.arrows
            .iter()
            .copied()
            .filter(|&a| self.base.source(a) == v)
            .collect()
    }

    pub fn is_border_loop(&self, a: usize) -> bool {
        self.base.kind_of(a) == BlockKind::I
    }
}

pub fn star_quiver(q: &GenTriQuiver) -> Result<StarQuiver<'_>> {
    let removed = q.removed_vertices();
    let vertices: Vec<usize> = (0..q.vertices().len())
        .filter(|&i| !removed.contains(&q.vertices()[i].id))
        .collect();
    let arrows: Vec<usize> = (0..q.arrows().len())
        .filter(|&a| {
            let x = &q.arrows()[a];
            !removed.contains(&x.source) && !removed.contains(&x.target)
        })
        .collect();
    let mut f = BTreeMap::new();
    for b in q.blocks() {
        let cycle = b.kind.template().f_cycle;
        for (i, &r) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            f.insert(q.role_arrow(b, r), q.role_arrow(b, next));
        }
    }
    if f.len() != arrows.len() || arrows.iter().any(|a| !f.contains_key(a)) {
        return Err(Error::Invalid("f does not act on the arrows of Q*".into()));
    }
    let mut bar = BTreeMap::new();
    for &v in &vertices {
        let outs: Vec<usize> = arrows
            .iter()
            .copied()
            .filter(|&a| q.source(a) == v)
            .collect();
        match outs.as_slice() {
            [a] => {
                bar.insert(*a, *a);
            }
            [a, b] => {
                bar.insert(*a, *b);
                bar.insert(*b, *a);
            }
            _ => {
                return Err(Error::Invalid(format!(
                    "vertex {} has {} out-arrows in Q*",
                    q.vertices()[v].id,
                    outs.len()
                )))
            }
        }
    }
    for (&a, &fa) in &f {
        if q.target(a) != q.source(fa) {
            return Err(Error::Invalid(format!(
                "f({}) does not start at the target of {}",
                q.arrows()[a].id,
                q.arrows()[a].id
            )));
        }
    }
    let g = f.iter().map(|(&a, &fa)| (a, bar[&fa])).collect();
    Ok(StarQuiver {
        base: q,
        vertices,
        arrows,
        f,
        bar,
        g,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    pub f_orbits: Vec<Vec<usize>>,
    /// g-orbits, each starting at its least arrow; sorted by that arrow.
    pub g_orbits: Vec<Vec<usize>>,
    pub orbit_of: BTreeMap<usize, usize>,
    pub border: BTreeSet<String>,
    pub nu_count: Vec<usize>,
    pub phi_count: Vec<usize>,
}

impl OrbitData {
    pub fn n(&self, o: usize) -> usize {
        self.g_orbits[o].len()
    }

    pub fn orbit(&self, a: usize) -> usize {
        self.orbit_of[&a]
    }

    pub fn n_of(&self, a: usize) -> usize {
        self.n(self.orbit(a))
    }

    /// Representative (least) arrow of an orbit.
    pub fn rep(&self, o: usize) -> usize {
        self.g_orbits[o][0]
    }

    pub fn nu_of(&self, a: usize) -> usize {
        self.nu_count[self.orbit(a)]
    }

    pub fn phi_of(&self, a: usize) -> usize {
        self.phi_count[self.orbit(a)]
    }

    pub fn orbit_by_rep(&self, q: &GenTriQuiver, id: &str) -> Option<usize> {
        q.arrow_index(id)
            .and_then(|a| self.orbit_of.get(&a).copied())
    }
}

fn cycles(arrows: &[usize], perm: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &a in arrows {
        if seen.contains(&a) {
            continue;
        }
        let mut cyc = vec![a];
        seen.insert(a);
        let mut x = perm(a);
        while x != a {
            seen.insert(x);
            cyc.push(x);
            x = perm(x);
        }
        out.push(cyc);
    }
    out
}

pub fn orbit_data(sq: &StarQuiver) -> OrbitData {
    let q = sq.base;
    // Arrow indices follow id order, so the first arrow met is the least.
    let f_orbits = cycles(&sq.arrows, |a| sq.f(a));
    let g_orbits = cycles(&sq.arrows, |a| sq.g(a));
    let mut orbit_of = BTreeMap::new();
    for (i, o) in g_orbits.iter().enumerate() {
        for &a in o {
            orbit_of.insert(a, i);
        }
    }
    let mut nu_count = vec![0; g_orbits.len()];
    let mut phi_count = vec![0; g_orbits.len()];
    let mut border = BTreeSet::new();
    for b in q.blocks() {
        match b.kind {
            BlockKind::I => {
                border.insert(b.vertex("v").to_string());
            }
            BlockKind::IV => nu_count[orbit_of[&q.role_arrow(b, Role::Nu)]] += 1,
            BlockKind::V => phi_count[orbit_of[&q.role_arrow(b, Role::Phi)]] += 1,
            _ => {}
        }
    }
    OrbitData {
        f_orbits,
        g_orbits,
        orbit_of,
        border,
        nu_count,
        phi_count,
    }
}

/// Cycle notation with arrow ids.
pub fn render_cycle(q: &GenTriQuiver, cyc: &[usize]) -> String {
    let ids: Vec<&str> = cyc.iter().map(|&a| q.arrows()[a].id.as_str()).collect();
    format!("({})", ids.join(" "))
}
