//! Paths along g-orbits and the defining relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quiver::{BlockKind, GenTriQuiver, Role};
use crate::star::{orbit_data, star_quiver, OrbitData, StarQuiver};
use crate::transforms::{MutationResult, Stage};
use crate::weights::{validate_weights, Scalar, WeightData, Weighted};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub source: String,
    pub target: String,
    pub arrows: Vec<String>,
}

impl Path {
    pub fn stationary(v: &str) -> Self {
        Path {
            source: v.to_string(),
            target: v.to_string(),
            arrows: Vec::new(),
        }
    }

    /// Path from arrow indices; panics if the sequence does not compose.
    pub fn from_seq(q: &GenTriQuiver, seq: &[usize]) -> Self {
        assert!(!seq.is_empty(), "use Path::stationary for e_x");
        for w in seq.windows(2) {
            assert_eq!(q.target(w[0]), q.source(w[1]), "arrows do not compose");
        }
        let first = &q.arrows()[seq[0]];
        let last = &q.arrows()[seq[seq.len() - 1]];
        Path {
            source: first.source.clone(),
            target: last.target.clone(),
            arrows: seq.iter().map(|&a| q.arrows()[a].id.clone()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn contains(&self, arrow: &str) -> bool {
        self.arrows.iter().any(|a| a == arrow)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e_{}", self.source)
        } else {
            f.write_str(&self.arrows.join("."))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coefficient {
    pub rational: BigRational,
    /// Sorted multiset of symbols.
    pub symbols: Vec<String>,
}

impl Coefficient {
    pub fn int(v: i64) -> Self {
        Coefficient {
            rational: BigRational::from_integer(BigInt::from(v)),
            symbols: Vec::new(),
        }
    }

    pub fn from_scalar(s: &Scalar) -> Self {
        match s {
            Scalar::Value(v) => Coefficient {
                rational: v.clone(),
                symbols: Vec::new(),
            },
            Scalar::Symbol(name) => Coefficient {
                rational: BigRational::one(),
                symbols: vec![name.clone()],
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero()
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(mut self) -> Self {
        self.rational = -self.rational;
        self
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rational)?;
        for s in &self.symbols {
            write!(f, "*{s}")?;
        }
        Ok(())
    }
}

/// Σ coefficient·path = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub family: String,
    pub terms: Vec<(Coefficient, Path)>,
}

impl Relation {
    /// Merge repeated monomials, drop zeros and scale the first term to
    /// rational part 1.
    fn normalized(family: &str, raw: Vec<(Coefficient, Path)>) -> Option<Relation> {
        let mut terms: Vec<(Coefficient, Path)> = Vec::new();
        for (c, p) in raw {
            if c.is_zero() {
                continue;
            }
            if let Some(t) = terms
                .iter_mut()
                .find(|(tc, tp)| tp == &p && tc.symbols == c.symbols)
            {
                t.0.rational += c.rational;
            } else {
                terms.push((c, p));
            }
        }
        terms.retain(|(c, _)| !c.is_zero());
        let lead = terms.first()?.0.rational.clone();
        for (c, _) in &mut terms {
            c.rational /= lead.clone();
        }
        Some(Relation {
            family: family.to_string(),
            terms,
        })
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.terms.iter().map(|(_, p)| p)
    }

    pub fn has_path(&self, p: &Path) -> bool {
        self.paths().any(|x| x == p)
    }

    pub fn is_parallel(&self) -> bool {
        let (s, t) = (&self.terms[0].1.source, &self.terms[0].1.target);
        self.paths().all(|p| &p.source == s && &p.target == t)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|(c, p)| format!("{c}*{p}")).collect();
        write!(f, "family={} : {} = 0", self.family, terms.join(" + "))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
}

impl RelationSet {
    pub fn family(&self, tag: &str) -> impl Iterator<Item = &Relation> {
        let tag = tag.to_string();
        self.relations.iter().filter(move |r| r.family == tag)
    }

    /// Monomial relation with exactly this path.
    pub fn has_zero_relation(&self, p: &Path) -> bool {
        self.relations
            .iter()
            .any(|r| r.is_monomial() && &r.terms[0].1 == p)
    }

    pub fn containing(&self, p: &Path) -> Vec<&Relation> {
        self.relations.iter().filter(|r| r.has_path(p)).collect()
    }

    pub fn render(&self) -> String {
        self.relations.iter().map(|r| format!("{r}\n")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardPaths {
    pub a: Path,
    pub b: Path,
    pub a_prime: Option<Path>,
}

pub fn standard_paths(
    sq: &StarQuiver,
    od: &OrbitData,
    w: &WeightData,
    arrow: usize,
) -> Result<StandardPaths> {
    let wq = Weighted::new(sq, od, w);
    if !sq.contains(arrow) {
        return Err(Error::Invalid(format!(
            "{} is not an arrow of Q*",
            wq.id(arrow)
        )));
    }
    let mn = wq.mn(arrow)?;
    let b = wq.g_walk(arrow, mn);
    Ok(StandardPaths {
        a: Path::from_seq(sq.base, &b[..mn - 1]),
        b: Path::from_seq(sq.base, &b),
        a_prime: (mn >= 3).then(|| Path::from_seq(sq.base, &b[..mn - 2])),
    })
}

/// Arrow sequences of B_{α_i}, B_{η_j} and B_{ω_j}, keyed by the first arrow.
pub(crate) fn special_seqs(wq: &Weighted) -> Result<BTreeMap<usize, Vec<usize>>> {
    let q = wq.q;
    let mut out = BTreeMap::new();
    for b in q.blocks() {
        match b.kind {
            BlockKind::IV => {
                let (alpha, delta, beta) = (
                    q.role_arrow(b, Role::Alpha),
                    q.role_arrow(b, Role::Delta),
                    q.role_arrow(b, Role::Beta),
                );
                let mut seq = vec![alpha];
                seq.extend(&wq.a_seq(delta)?[1..]);
                seq.push(beta);
                out.insert(alpha, seq);
            }
            BlockKind::V => {
                let r = |role| q.role_arrow(b, role);
                let mut eta = vec![r(Role::Eta)];
                eta.extend(&wq.a_seq(r(Role::Epsilon))?[1..]);
                eta.push(r(Role::Gamma));
                out.insert(r(Role::Eta), eta);
                let mut omega = vec![r(Role::Omega)];
                omega.extend(&wq.a_seq(r(Role::Psi))?[1..]);
                omega.push(r(Role::Rho));
                out.insert(r(Role::Omega), omega);
            }
            _ => {}
        }
    }
    Ok(out)
}

pub fn special_cycles(
    sq: &StarQuiver,
    od: &OrbitData,
    w: &WeightData,
) -> Result<BTreeMap<String, Path>> {
    let wq = Weighted::new(sq, od, w);
    Ok(special_seqs(&wq)?
        .into_iter()
        .map(|(a, seq)| (wq.id(a).to_string(), Path::from_seq(sq.base, &seq)))
        .collect())
}

/// Relation builder over arrow sequences.
struct Gen<'a> {
    wq: Weighted<'a>,
    out: Vec<Relation>,
    /// Arrows ν_i and φ_j excluded by families 3, 4 and 6.
    nu_phi: BTreeSet<usize>,
}

impl<'a> Gen<'a> {
    fn new(wq: Weighted<'a>) -> Self {
        let q = wq.q;
        let mut nu_phi = BTreeSet::new();
        for b in q.blocks() {
            match b.kind {
                BlockKind::IV => {
                    nu_phi.insert(q.role_arrow(b, Role::Nu));
                }
                BlockKind::V => {
                    nu_phi.insert(q.role_arrow(b, Role::Phi));
                }
                _ => {}
            }
        }
        Gen {
            wq,
            out: Vec::new(),
            nu_phi,
        }
    }

    fn path(&self, seq: &[usize]) -> Path {
        Path::from_seq(self.wq.q, seq)
    }

    fn push(&mut self, family: &str, terms: Vec<(Coefficient, Vec<usize>)>) {
        let raw = terms.into_iter().map(|(c, s)| (c, self.path(&s))).collect();
        if let Some(r) = Relation::normalized(family, raw) {
            self.out.push(r);
        }
    }

    fn zero(&mut self, family: &str, seq: Vec<usize>) {
        self.push(family, vec![(Coefficient::int(1), seq)]);
    }

    /// -c_a·A_a
    fn minus_ca(&self, a: usize) -> Result<(Coefficient, Vec<usize>)> {
        Ok((
            Coefficient::from_scalar(self.wq.c(a)?).neg(),
            self.wq.a_seq(a)?,
        ))
    }

    fn f(&self, a: usize) -> usize {
        self.wq.sq.f(a)
    }

    fn g(&self, a: usize) -> usize {
        self.wq.sq.g(a)
    }

    fn bar(&self, a: usize) -> usize {
        self.wq.sq.bar(a)
    }

    fn virt(&self, a: usize) -> Result<bool> {
        self.wq.is_virtual(a)
    }

    fn block_arrows(&self, b: usize) -> Vec<usize> {
        let q = self.wq.q;
        let mut v: Vec<usize> = q.blocks()[b]
            .arrows
            .values()
            .map(|id| q.arrow_index(id).expect("arrow"))
            .collect();
        v.sort();
        v
    }

    fn family1(&mut self, tag: &str, blocks: &[usize]) -> Result<()> {
        for &bi in blocks {
            if self.wq.q.blocks()[bi].kind != BlockKind::I {
                continue;
            }
            let a = self.block_arrows(bi)[0];
            let abar = self.bar(a);
            let v = &self.wq.q.arrows()[a].source;
            let b = Coefficient::from_scalar(&self.wq.b(v)).neg();
            let terms = vec![
                (Coefficient::int(1), vec![a, a]),
                self.minus_ca(abar)?,
                (b, self.wq.b_seq(a)?),
            ];
            self.push(tag, terms);
        }
        Ok(())
    }

    fn family2(&mut self, tag: &str, blocks: &[usize], kinds: &[BlockKind]) -> Result<()> {
        for &bi in blocks {
            if !kinds.contains(&self.wq.q.blocks()[bi].kind) {
                continue;
            }
            for a in self.block_arrows(bi) {
                let terms = vec![
                    (Coefficient::int(1), vec![a, self.f(a)]),
                    self.minus_ca(self.bar(a))?,
                ];
                self.push(tag, terms);
            }
        }
        Ok(())
    }

    fn family3(&mut self, tag: &str, blocks: &[usize]) -> Result<()> {
        let q = self.wq.q;
        for &bi in blocks {
            let b = &q.blocks()[bi];
            if b.kind != BlockKind::IV {
                continue;
            }
            let r = |role| q.role_arrow(b, role);
            let (alpha, tau, beta, nu, delta) = (
                r(Role::Alpha),
                r(Role::Tau),
                r(Role::Beta),
                r(Role::Nu),
                r(Role::Delta),
            );
            let one = || Coefficient::int(1);
            let t = vec![
                (one(), vec![nu, delta]),
                (one().neg(), vec![beta, alpha]),
                self.minus_ca(self.bar(nu))?,
            ];
            self.push(tag, t);
            let t = vec![(one(), vec![delta, tau]), self.minus_ca(self.bar(delta))?];
            self.push(tag, t);
            let t = vec![(one(), vec![tau, nu]), self.minus_ca(self.bar(tau))?];
            self.push(tag, t);
            self.zero(tag, vec![alpha, tau]);
            self.zero(tag, vec![tau, beta]);
            self.zero(tag, vec![delta, tau, self.g(tau)]);
            let gd = self.g(delta);
            if !(self.virt(tau)? || self.nu_phi.contains(&gd)) {
                self.zero(tag, vec![delta, gd, self.f(gd)]);
            }
            let gt = self.g(tau);
            if !(self.wq.m1_n3(nu)? || self.nu_phi.contains(&gt)) {
                self.zero(tag, vec![tau, gt, self.f(gt)]);
            }
        }
        Ok(())
    }

    fn family4(&mut self, tag: &str, blocks: &[usize]) -> Result<()> {
        let q = self.wq.q;
        for &bi in blocks {
            let b = &q.blocks()[bi];
            if b.kind != BlockKind::V {
                continue;
            }
            let r = |role| q.role_arrow(b, role);
            let (eps, rho, sigma, eta, psi, omega, gamma, phi) = (
                r(Role::Epsilon),
                r(Role::Rho),
                r(Role::Sigma),
                r(Role::Eta),
                r(Role::Psi),
                r(Role::Omega),
                r(Role::Gamma),
                r(Role::Phi),
            );
            let one = || Coefficient::int(1);
            let t = vec![
                (one(), vec![phi, eps]),
                (one().neg(), vec![gamma, eta]),
                self.minus_ca(self.bar(phi))?,
            ];
            self.push(tag, t);
            let t = vec![
                (one(), vec![eps, psi]),
                (one().neg(), vec![rho, omega]),
                self.minus_ca(self.bar(eps))?,
            ];
            self.push(tag, t);
            let t = vec![(one(), vec![psi, phi]), self.minus_ca(self.bar(psi))?];
            self.push(tag, t);
            self.push(
                tag,
                vec![(one(), vec![gamma, sigma]), (one().neg(), vec![phi, rho])],
            );
            self.push(
                tag,
                vec![(one(), vec![sigma, omega]), (one().neg(), vec![eta, psi])],
            );
            self.zero(tag, vec![omega, gamma]);
            self.zero(tag, vec![omega, phi]);
            self.zero(tag, vec![psi, gamma]);
            self.zero(tag, vec![phi, eps, psi, phi]);
            self.zero(tag, vec![eps, psi, phi, eps]);
            self.zero(tag, vec![psi, phi, eps, psi]);
            let mut bphi = self.wq.b_seq(phi)?;
            bphi.push(self.bar(phi));
            self.zero(tag, bphi);
            let gp = self.g(psi);
            if !self.nu_phi.contains(&gp) {
                self.zero(tag, vec![psi, gp, self.f(gp)]);
            }
        }
        Ok(())
    }

    /// α f(α) g(f(α)).
    fn family5(&mut self, tag: &str, blocks: &[usize]) -> Result<()> {
        for &bi in blocks {
            if self.wq.q.blocks()[bi].kind > BlockKind::III {
                continue;
            }
            for a in self.block_arrows(bi) {
                let fa = self.f(a);
                let abar = self.bar(a);
                let skip =
                    self.virt(self.f(fa))? || (self.virt(self.f(abar))? && self.wq.m1_n3(abar)?);
                if !skip {
                    self.zero(tag, vec![a, fa, self.g(fa)]);
                }
            }
        }
        Ok(())
    }

    /// α g(α) f(g(α)); `exclude` controls the ν/φ exception.
    fn family6(&mut self, tag: &str, blocks: &[usize], exclude: bool) -> Result<()> {
        for &bi in blocks {
            if self.wq.q.blocks()[bi].kind > BlockKind::III {
                continue;
            }
            for a in self.block_arrows(bi) {
                let ga = self.g(a);
                if exclude && self.nu_phi.contains(&ga) {
                    continue;
                }
                let fa = self.f(a);
                let skip = self.virt(fa)? || (self.virt(self.f(fa))? && self.wq.m1_n3(fa)?);
                if !skip {
                    self.zero(tag, vec![a, ga, self.f(ga)]);
                }
            }
        }
        Ok(())
    }
}

fn check_weights(sq: &StarQuiver, od: &OrbitData, w: &WeightData) -> Result<()> {
    let diags = validate_weights(sq, od, w);
    if let Some(d) = diags.first() {
        return Err(Error::Weight(d.to_string()));
    }
    Ok(())
}

pub fn relations_generalized(
    sq: &StarQuiver,
    od: &OrbitData,
    w: &WeightData,
) -> Result<RelationSet> {
    check_weights(sq, od, w)?;
    let wq = Weighted::new(sq, od, w);
    let all: Vec<usize> = (0..sq.base.blocks().len()).collect();
    let mut gen = Gen::new(wq);
    gen.family1("1", &all)?;
    gen.family2("2", &all, &[BlockKind::II, BlockKind::III])?;
    gen.family3("3", &all)?;
    gen.family4("4", &all)?;
    gen.family5("5", &all)?;
    gen.family6("6", &all, true)?;
    Ok(RelationSet { relations: gen.out })
}

pub fn relations_triangulation(
    sq: &StarQuiver,
    od: &OrbitData,
    w: &WeightData,
) -> Result<RelationSet> {
    let q = sq.base;
    if let Some(b) = q.blocks().iter().find(|b| b.kind > BlockKind::III) {
        return Err(Error::NotTriangulation(format!(
            "block `{}` has type {}",
            b.name, b.kind
        )));
    }
    check_weights(sq, od, w)?;
    let wq = Weighted::new(sq, od, w);
    let all: Vec<usize> = (0..q.blocks().len()).collect();
    let mut gen = Gen::new(wq);
    gen.family1("1", &all)?;
    gen.family2("2", &all, &[BlockKind::II, BlockKind::III])?;
    gen.family5("3", &all)?;
    gen.family6("4", &all, false)?;
    Ok(RelationSet { relations: gen.out })
}

/// Relations of Λ″ on Q″ = Q′ minus the arrows π_j, κ_j.
pub fn relations_lambda_dblprime(stage1: &MutationResult) -> Result<RelationSet> {
    if stage1.stage != Stage::One {
        return Err(Error::Stage("expected a stage-1 result".into()));
    }
    let q = &stage1.quiver;
    let sq = star_quiver(q)?;
    let od = orbit_data(&sq);
    check_weights(&sq, &od, &stage1.weights)?;
    let wq = Weighted::new(&sq, &od, &stage1.weights);
    let regions = stage1.regions();
    let region_blocks: BTreeSet<&str> = regions
        .iter()
        .flat_map(|r| [r.two.as_str(), r.four.as_str()])
        .collect();
    let original: Vec<usize> = (0..q.blocks().len())
        .filter(|&i| !region_blocks.contains(q.blocks()[i].name.as_str()))
        .collect();

    let mut gen = Gen::new(wq);
    gen.family1("1", &original)?;
    gen.family2("2", &original, &[BlockKind::II, BlockKind::III])?;
    gen.family3("3", &original)?;
    gen.family5("5", &original)?;
    gen.family6("6", &original, true)?;
    let mut out = std::mem::take(&mut gen.out);

    let orig_nu: BTreeSet<usize> = original
        .iter()
        .filter(|&&i| q.blocks()[i].kind == BlockKind::IV)
        .map(|&i| q.role_arrow(&q.blocks()[i], Role::Nu))
        .collect();
    let tag = "lambda-dblprime";
    for r in &regions {
        let a = |id: &str| q.arrow_index(id).expect("region arrow");
        let (lambda, eps, psi, theta, eta, zeta) = (
            a(&r.lambda),
            a(&r.epsilon),
            a(&r.psi),
            a(&r.theta),
            a(&r.eta),
            a(&r.zeta),
        );
        let one = || Coefficient::int(1);
        let zbar = gen.bar(zeta);
        let t = vec![
            (one(), vec![lambda, eps, psi]),
            (one().neg(), vec![theta, eta, psi]),
            gen.minus_ca(lambda)?,
        ];
        gen.push(tag, t);
        let t = vec![
            (one(), vec![zeta, lambda, eps]),
            (one().neg(), vec![zeta, theta, eta]),
            gen.minus_ca(zbar)?,
        ];
        gen.push(tag, t);
        let t = vec![(one(), vec![eps, psi, zeta]), gen.minus_ca(eps)?];
        gen.push(tag, t);
        let t = vec![(one(), vec![psi, zeta, lambda]), gen.minus_ca(psi)?];
        gen.push(tag, t);
        gen.zero(tag, vec![psi, zeta, theta]);
        gen.zero(tag, vec![eta, psi, zeta]);
        gen.zero(tag, vec![lambda, eps, psi, zeta, lambda]);
        gen.zero(tag, vec![eps, psi, zeta, lambda, eps]);
        gen.zero(tag, vec![psi, zeta, lambda, eps, psi]);
        gen.zero(tag, vec![zeta, lambda, eps, psi, zeta]);
        let mut al = wq.a_seq(lambda)?;
        al.push(zbar);
        gen.zero(tag, al);
        let gp = gen.g(psi);
        if !orig_nu.contains(&gp) {
            gen.zero(tag, vec![psi, gp, gen.f(gp)]);
        }
    }
    out.append(&mut gen.out);
    Ok(RelationSet {
        relations: eliminate_pi_kappa(q, &regions, out),
    })
}

/// Rewrite π_j as ψ_jζ_j and κ_j as λ_jε_j − θ_jη_j.
fn eliminate_pi_kappa(
    q: &GenTriQuiver,
    regions: &[crate::transforms::Region],
    rels: Vec<Relation>,
) -> Vec<Relation> {
    let mut subst: BTreeMap<String, Vec<(i64, Vec<String>)>> = BTreeMap::new();
    for r in regions {
        subst.insert(r.pi.clone(), vec![(1, vec![r.psi.clone(), r.zeta.clone()])]);
        subst.insert(
            r.kappa.clone(),
            vec![
                (1, vec![r.lambda.clone(), r.epsilon.clone()]),
                (-1, vec![r.theta.clone(), r.eta.clone()]),
            ],
        );
    }
    let _ = q;
    rels.into_iter()
        .filter_map(|rel| {
            if !rel
                .paths()
                .any(|p| p.arrows.iter().any(|a| subst.contains_key(a)))
            {
                return Some(rel);
            }
            let mut raw = Vec::new();
            for (c, p) in rel.terms {
                let mut expanded: Vec<(i64, Vec<String>)> = vec![(1, Vec::new())];
                for a in &p.arrows {
                    let options = subst
                        .get(a)
                        .cloned()
                        .unwrap_or_else(|| vec![(1, vec![a.clone()])]);
                    expanded = expanded
                        .into_iter()
                        .flat_map(|(s, prefix)| {
                            options.iter().map(move |(t, seg)| {
                                let mut v = prefix.clone();
                                v.extend(seg.iter().cloned());
                                (s * t, v)
                            })
                        })
                        .collect();
                }
                for (s, arrows) in expanded {
                    let mut c2 = c.clone();
                    c2.rational *= BigRational::from_integer(BigInt::from(s));
                    raw.push((
                        c2,
                        Path {
                            source: p.source.clone(),
                            target: p.target.clone(),
                            arrows,
                        },
                    ));
                }
            }
            Relation::normalized(&rel.family, raw)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::load_gtq;
    use crate::weights::Multiplicity;

    #[test]
    fn coefficient_display() {
        let c = Coefficient::from_scalar(&Scalar::Symbol("d".into())).neg();
        assert_eq!(c.to_string(), "-1*d");
        assert_eq!(Coefficient::int(3).to_string(), "3");
    }

    #[test]
    fn normalization_merges_and_scales() {
        let p = Path::stationary("x");
        let r = Relation::normalized(
            "t",
            vec![
                (Coefficient::int(2), p.clone()),
                (Coefficient::int(2), p.clone()),
            ],
        )
        .unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].0, Coefficient::int(1));
        let none = Relation::normalized("t", vec![(Coefficient::int(0), p)]);
        assert!(none.is_none());
    }

    #[test]
    fn two_loop_paths() {
        let q = load_gtq("block A type I\nblock B type I\nglue A.1 B.1\n").unwrap();
        let sq = star_quiver(&q).unwrap();
        let od = orbit_data(&sq);
        let mut w = WeightData::uniform(&q, &od, 2);
        let sp = standard_paths(&sq, &od, &w, 0).unwrap();
        assert_eq!(sp.b.to_string(), "A:loop.B:loop.A:loop.B:loop");
        assert_eq!(sp.a.len(), 3);
        assert_eq!(sp.a_prime.unwrap().len(), 2);
        w.set_m(&q, &od, "A:loop", Multiplicity::Value(1));
        let sp = standard_paths(&sq, &od, &w, 0).unwrap();
        assert_eq!(sp.a.to_string(), "A:loop");
        assert!(sp.a_prime.is_none());
    }
}
