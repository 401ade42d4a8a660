//! JSON descriptors for groups, G-sets, bundles and computed classes.
//!
//! Descriptors are plain serde types. `build_*` turns them into library
//! values and reports failures with the path of the offending field;
//! `*_descriptor` goes the other way, producing documents that build back
//! to equal values.
//!
//! Element ids: for a group given by a multiplication table, the id of an
//! element is its row label in that table. For every other group it is the
//! element index (closure order from the generators as listed).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, DeserializeOwned, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bundle::{canonical_key, CharacterBundle, OrbitSpec, VectClass};
use crate::error::{Error, Result};
use crate::grp::{direct_product, group_from_permutations, group_from_table, named_group, wreath_product, Elem, FiniteGroup, Realization};
use crate::gset::GSet;
use crate::k0::{FgrClass, GroupClassId};
use crate::lpoly::{format_q, parse_q, LPoly, Q};
use crate::series::{Ring, Series};

/// Parses a JSON document, naming the failing path on error.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::descriptor(if path == "." { "document".to_string() } else { path }, e.inner().to_string())
    })
}

pub fn from_value<T: DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        Error::descriptor(if path == "." { "document".to_string() } else { path }, e.inner().to_string())
    })
}

fn at(field: &str, e: Error) -> Error {
    match e {
        Error::Descriptor { field: inner, message } => Error::descriptor(format!("{field}.{inner}"), message),
        Error::GroupTooLarge { .. } => e,
        other => Error::descriptor(field, other.to_string()),
    }
}

/// An integer written as a JSON number when it fits in `i64` and as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Int, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                v.trim().parse().map(Int).map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

// ---------------------------------------------------------------- groups

/// A group by name (`"S3"`) or by construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum GroupDesc {
    Name(String),
    Typed(TypedGroup),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum TypedGroup {
    Permutation { degree: usize, generators: Vec<Vec<usize>> },
    Table { mul: Vec<Vec<usize>> },
    Product { factors: Vec<GroupDesc> },
    Wreath { base: Box<GroupDesc>, n: usize },
    Named { name: String },
}

impl<'de> Deserialize<'de> for GroupDesc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<GroupDesc, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = GroupDesc;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a group name or a group object with a \"type\" field")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<GroupDesc, E> {
                Ok(GroupDesc::Name(v.to_string()))
            }
            fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<GroupDesc, A::Error> {
                TypedGroup::deserialize(de::value::MapAccessDeserializer::new(map)).map(GroupDesc::Typed)
            }
        }
        d.deserialize_any(V)
    }
}

pub fn build_group(desc: &GroupDesc) -> Result<FiniteGroup> {
    match desc {
        GroupDesc::Name(name) | GroupDesc::Typed(TypedGroup::Named { name }) => {
            named_group(name)
        }
        GroupDesc::Typed(TypedGroup::Permutation { degree, generators }) => {
            for (i, g) in generators.iter().enumerate() {
                if g.len() != *degree {
                    return Err(Error::descriptor(
                        format!("generators[{i}]"),
                        format!("has length {}, degree is {degree}", g.len()),
                    ));
                }
            }
            group_from_permutations(*degree, generators).map_err(|e| match e {
                Error::NotBijective { index, .. } => {
                    Error::descriptor(format!("generators[{index}]"), "not a permutation of 0..degree")
                }
                other => at("generators", other),
            })
        }
        GroupDesc::Typed(TypedGroup::Table { mul }) => group_from_table(mul).map_err(|e| at("mul", e)),
        GroupDesc::Typed(TypedGroup::Product { factors }) => {
            let mut acc = FiniteGroup::trivial();
            for (i, f) in factors.iter().enumerate() {
                let g = build_group(f).map_err(|e| at(&format!("factors[{i}]"), e))?;
                acc = if i == 0 { g } else { direct_product(&acc, &g)? };
            }
            Ok(acc)
        }
        GroupDesc::Typed(TypedGroup::Wreath { base, n }) => {
            let b = build_group(base).map_err(|e| at("base", e))?;
            wreath_product(&b, *n).map_err(|e| at("n", e))
        }
    }
}

/// Element with a given id (see the module notes).
pub fn elem_by_id(g: &FiniteGroup, id: usize) -> Option<Elem> {
    match g.realization() {
        Realization::Table => g.find_table_label(id),
        _ => g.elem(id).ok(),
    }
}

pub fn elem_id(g: &FiniteGroup, e: Elem) -> usize {
    g.table_label(e).unwrap_or(e.index())
}

/// A descriptor that builds a group with the same element ids and the same
/// generator list as `g`.
pub fn group_descriptor(g: &FiniteGroup) -> GroupDesc {
    let perms: Option<Vec<Vec<usize>>> = match g.realization() {
        Realization::Permutation { .. } => g.generators().into_iter().map(|s| g.as_permutation(s)).collect(),
        _ => None,
    };
    match perms {
        Some(generators) => {
            let degree = g.as_permutation(g.identity()).map_or(0, |p| p.len());
            GroupDesc::Typed(TypedGroup::Permutation { degree, generators })
        }
        None => {
            let ids: Vec<usize> = g.elements().map(|e| elem_id(g, e)).collect();
            let n = ids.len();
            let mut mul = vec![vec![0; n]; n];
            for a in g.elements() {
                for b in g.elements() {
                    mul[ids[a.index()]][ids[b.index()]] = ids[g.mul(a, b).index()];
                }
            }
            GroupDesc::Typed(TypedGroup::Table { mul })
        }
    }
}

/// Name of a preset class, or the multiplication table of its representative.
pub fn class_descriptor(id: GroupClassId) -> GroupDesc {
    match id.name() {
        Some(n) => GroupDesc::Name(n.to_string()),
        None => {
            let rep = id.representative();
            GroupDesc::Typed(TypedGroup::Table { mul: rep.multiplication_table() })
        }
    }
}

// ---------------------------------------------------------------- G-sets

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellDesc {
    #[serde(default)]
    pub dim: u32,
}

/// `action` maps each generator index to the image list of the cells. When
/// it is omitted the action is trivial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GSetDesc {
    pub group: GroupDesc,
    pub cells: Vec<CellDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<BTreeMap<String, Vec<usize>>>,
}

pub fn build_gset(desc: &GSetDesc) -> Result<GSet> {
    let g = build_group(&desc.group).map_err(|e| at("group", e))?;
    build_gset_over(desc, &g)
}

/// Like [`build_gset`] but over an already built group.
pub fn build_gset_over(desc: &GSetDesc, g: &FiniteGroup) -> Result<GSet> {
    let dims: Vec<u32> = desc.cells.iter().map(|c| c.dim).collect();
    let Some(action) = &desc.action else {
        return Ok(GSet::trivial(g, dims));
    };
    let gens = g.generators();
    let mut images: Vec<Option<Vec<usize>>> = vec![None; gens.len()];
    for (key, img) in action {
        let field = format!("action.{key}");
        let i: usize = key.parse().map_err(|_| Error::descriptor(&field, "generator index must be an integer"))?;
        if i >= gens.len() {
            return Err(Error::descriptor(field, format!("the group has {} generators", gens.len())));
        }
        images[i] = Some(img.clone());
    }
    let images: Vec<Vec<usize>> = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| img.ok_or_else(|| Error::descriptor(format!("action.{i}"), "missing image list for generator")))
        .collect::<Result<_>>()?;
    GSet::from_generator_images(g, dims, &images).map_err(|e| match e {
        Error::NotAnAction(m) => Error::descriptor("action", m),
        Error::LengthMismatch { .. } => Error::descriptor("action", e.to_string()),
        other => other,
    })
}

pub fn gset_descriptor(x: &GSet) -> GSetDesc {
    let g = x.group();
    let cells = x.dims().iter().map(|&dim| CellDesc { dim }).collect();
    let group = group_descriptor(g);
    // the rebuilt group may list generators differently (tables pick them
    // greedily), so the images are written for the rebuilt generators
    let rebuilt = build_group(&group).expect("descriptor of an existing group");
    let action = (!x.is_empty() && !rebuilt.generators().is_empty()).then(|| {
        rebuilt
            .generators()
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let e = elem_by_id(g, elem_id(&rebuilt, s)).expect("same element ids");
                (i.to_string(), x.permutation(e))
            })
            .collect()
    });
    GSetDesc { group, cells, action }
}

// ---------------------------------------------------------------- bundles

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitDesc {
    pub basepoint: usize,
    /// One map per fibre line, from stabilizer element ids to `"p/q"`.
    #[serde(default)]
    pub characters: Vec<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleDesc {
    pub base: GSetDesc,
    #[serde(default)]
    pub orbits: Vec<OrbitDesc>,
}

pub fn build_bundle(desc: &BundleDesc) -> Result<CharacterBundle> {
    let base = build_gset(&desc.base).map_err(|e| at("base", e))?;
    let g = base.group();
    let mut specs = Vec::with_capacity(desc.orbits.len());
    for (o, orbit) in desc.orbits.iter().enumerate() {
        if orbit.basepoint >= base.len() {
            return Err(Error::descriptor(format!("orbits[{o}].basepoint"), "no such cell"));
        }
        let mut characters = Vec::with_capacity(orbit.characters.len());
        for (c, values) in orbit.characters.iter().enumerate() {
            let mut line = Vec::with_capacity(values.len());
            for (key, value) in values {
                let field = format!("orbits[{o}].characters[{c}].{key}");
                let e = key
                    .parse()
                    .ok()
                    .and_then(|id| elem_by_id(g, id))
                    .ok_or_else(|| Error::descriptor(&field, "not an element id"))?;
                let v = parse_q(value).ok_or_else(|| Error::descriptor(&field, "expected a fraction \"p/q\""))?;
                line.push((e, v));
            }
            characters.push(line);
        }
        specs.push(OrbitSpec { basepoint: orbit.basepoint, characters });
    }
    CharacterBundle::new(&base, &specs).map_err(|e| match e {
        Error::BadBundle(m) => Error::descriptor("orbits", m),
        other => other,
    })
}

// ---------------------------------------------------------------- results

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LTerm {
    pub q: String,
    pub c: Int,
}

/// `Σ c 𝕃^q` as a list sorted by exponent.
pub fn lpoly_descriptor(p: &LPoly) -> Vec<LTerm> {
    p.terms().map(|(q, c)| LTerm { q: format_q(q), c: Int(c.clone()) }).collect()
}

pub fn build_lpoly(terms: &[LTerm]) -> Result<LPoly> {
    let mut out = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let q = parse_q(&t.q).ok_or_else(|| Error::descriptor(format!("[{i}].q"), "expected a fraction \"p/q\""))?;
        out.push((q, t.c.0.clone()));
    }
    Ok(LPoly::from_terms(out))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FgrTerm {
    pub group: GroupDesc,
    pub dim: u32,
    pub coeff: Int,
}

pub fn fgr_descriptor(x: &FgrClass) -> Vec<FgrTerm> {
    x.terms().map(|(g, dim, c)| FgrTerm { group: class_descriptor(g), dim, coeff: Int(c.clone()) }).collect()
}

pub fn build_fgr(terms: &[FgrTerm]) -> Result<FgrClass> {
    let mut acc = FgrClass::zero();
    for (i, t) in terms.iter().enumerate() {
        let g = build_group(&t.group).map_err(|e| at(&format!("[{i}].group"), e))?;
        let id = GroupClassId::of(&g)?;
        acc = acc.add(&FgrClass::term(id, t.dim, t.coeff.0.clone()));
    }
    Ok(acc)
}

/// A bundle class term: `phases[id]` lists the eigenphases of the element
/// with that id on the fibre.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectTerm {
    pub group: GroupDesc,
    pub dim: u32,
    pub phases: Vec<Vec<String>>,
    pub coeff: Int,
}

pub fn vect_descriptor(x: &VectClass) -> Vec<VectTerm> {
    x.terms()
        .map(|(key, c)| {
            // representative element indices are the ids of the class descriptor
            let phases = key.phases.iter().map(|p| p.iter().map(format_q).collect()).collect();
            VectTerm { group: class_descriptor(key.group), dim: key.dim, phases, coeff: Int(c.clone()) }
        })
        .collect()
}

pub fn build_vect(terms: &[VectTerm]) -> Result<VectClass> {
    let mut acc = VectClass::zero();
    for (i, t) in terms.iter().enumerate() {
        let g = build_group(&t.group).map_err(|e| at(&format!("[{i}].group"), e))?;
        if t.phases.len() != g.order() {
            return Err(Error::descriptor(
                format!("[{i}].phases"),
                format!("expected one list per element ({}), got {}", g.order(), t.phases.len()),
            ));
        }
        let rank = t.phases.first().map_or(0, Vec::len);
        let mut by_id: Vec<Vec<Q>> = Vec::with_capacity(t.phases.len());
        for (j, list) in t.phases.iter().enumerate() {
            let field = format!("[{i}].phases[{j}]");
            if list.len() != rank {
                return Err(Error::descriptor(field, "every element needs the same number of phases"));
            }
            let mut qs: Vec<Q> = list
                .iter()
                .map(|s| parse_q(s).filter(|q| *q >= Q::from_integer(0) && *q < Q::from_integer(1)))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::descriptor(&field, "phases are fractions in [0, 1)"))?;
            qs.sort();
            by_id.push(qs);
        }
        let key = canonical_key(&g, t.dim, |e| by_id[elem_id(&g, e)].clone())?;
        acc = acc.add(&VectClass::term(key, t.coeff.0.clone()));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesDesc<T> {
    #[serde(rename = "N")]
    pub n: usize,
    pub coeffs: Vec<T>,
}

pub fn series_descriptor<R: Ring, T>(s: &Series<R>, f: impl Fn(&R) -> T) -> SeriesDesc<T> {
    SeriesDesc { n: s.order(), coeffs: s.coeffs().iter().map(f).collect() }
}

pub fn parse_weights(text: &str) -> Result<Vec<Q>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(i, s)| parse_q(s).ok_or_else(|| Error::descriptor(format!("phi[{i}]"), format!("{s:?} is not a fraction"))))
        .collect()
}
