#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use gentri::quiver::{build_block, glue, load_gtq, BlockKind, GenTriQuiver, GluingSpec, OutletRef};
use gentri::star::{orbit_data, star_quiver};
use gentri::surface::{parse_surface, surface_to_quiver};
use gentri::weights::{parse_weights, WeightData};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

pub fn load(name: &str) -> GenTriQuiver {
    load_gtq(&read(name)).unwrap()
}

pub fn load_surface(name: &str) -> GenTriQuiver {
    surface_to_quiver(&parse_surface(&read(name)).unwrap())
        .unwrap()
        .quiver
}

/// Weights from a bundled file with the given symbols instantiated.
pub fn weights(q: &GenTriQuiver, name: &str, values: &[(&str, u64)]) -> WeightData {
    let sq = star_quiver(q).unwrap();
    let od = orbit_data(&sq);
    let w = parse_weights(&read(name), q, &od).unwrap();
    w.instantiate(&vals(values))
}

pub fn vals(values: &[(&str, u64)]) -> BTreeMap<String, u64> {
    values.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

pub fn arrow(q: &GenTriQuiver, id: &str) -> usize {
    q.arrow_index(id).unwrap_or_else(|| panic!("no arrow {id}"))
}

/// Random connected gluing of at most `max_blocks` blocks.
pub fn random_gluing<R: Rng>(rng: &mut R, max_blocks: usize, kinds: &[BlockKind]) -> GluingSpec {
    loop {
        let n = rng.gen_range(2..=max_blocks);
        let picked: Vec<BlockKind> = (0..n).map(|_| *kinds.choose(rng).unwrap()).collect();
        let mut outlets: Vec<OutletRef> = picked
            .iter()
            .enumerate()
            .flat_map(|(b, k)| (0..k.outlet_count()).map(move |o| OutletRef::new(b, o)))
            .collect();
        if outlets.len() % 2 == 1 {
            continue;
        }
        outlets.shuffle(rng);
        let pairs: Vec<(OutletRef, OutletRef)> = outlets.chunks(2).map(|c| (c[0], c[1])).collect();
        if pairs.iter().any(|(x, y)| x.block == y.block) {
            continue;
        }
        let blocks = picked
            .iter()
            .enumerate()
            .map(|(i, k)| build_block(*k, &format!("B{i}")))
            .collect();
        let Ok(spec) = GluingSpec::from_pairs(blocks, &pairs) else {
            continue;
        };
        if glue(&spec).is_ok() {
            return spec;
        }
    }
}

/// Cycle up to rotation, as ids.
pub fn canon(cyc: &[String]) -> Vec<String> {
    let k = (0..cyc.len()).min_by_key(|&i| &cyc[i]).unwrap();
    cyc[k..].iter().chain(&cyc[..k]).cloned().collect()
}

pub fn orbit_sets(q: &GenTriQuiver, orbits: &[Vec<usize>]) -> BTreeSet<Vec<String>> {
    orbits
        .iter()
        .map(|o| {
            canon(
                &o.iter()
                    .map(|&a| q.arrows()[a].id.clone())
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

pub fn named(names: &BTreeMap<&str, &str>, cycles: &[&str]) -> BTreeSet<Vec<String>> {
    cycles
        .iter()
        .map(|c| {
            canon(
                &c.split(' ')
                    .map(|s| names[s].to_string())
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

pub fn thirteen_names() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("phi", "V:phi"),
        ("epsilon", "V:epsilon"),
        ("psi", "V:psi"),
        ("lambda", "T5:ab"),
        ("pi", "T5:bc"),
        ("chi", "T5:ca"),
        ("nu1", "B1:nu"),
        ("delta1", "B1:delta"),
        ("tau1", "B1:tau"),
        ("nu2", "B2:nu"),
        ("delta2", "B2:delta"),
        ("tau2", "B2:tau"),
        ("nu3", "B3:nu"),
        ("delta3", "B3:delta"),
        ("tau3", "B3:tau"),
        ("alpha4", "T1:ab"),
        ("xi4", "T1:bc"),
        ("delta4", "T1:ca"),
        ("beta4", "T2:ab"),
        ("nu4", "T2:bc"),
        ("mu4", "T2:ca"),
        ("alpha5", "T3:ab"),
        ("xi5", "T3:bc"),
        ("delta5", "T3:ca"),
        ("beta5", "T4:ab"),
        ("nu5", "T4:bc"),
        ("mu5", "T4:ca"),
        ("u1", "T6:ab"),
        ("v1", "T6:bc"),
        ("w1", "T6:ca"),
        ("u2", "T7:ab"),
        ("v2", "T7:bc"),
        ("w2", "T7:ca"),
        ("theta", "P3:loop"),
        ("kappa", "P3:out"),
        ("iota", "P3:in"),
        ("zeta", "P1:loop"),
    ])
}

/// Quiver file, optional weight file and symbol values.
pub type Case = (
    &'static str,
    Option<&'static str>,
    &'static [(&'static str, u64)],
);
