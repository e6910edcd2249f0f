//! The JSON wire format (`"format": 1`) shared by the CLI, the FFI layer and
//! the test fixtures. Every object can be written and read back unchanged.
//!
//! Parsing walks a [`serde_json::Value`] and reports the JSON path of the
//! first offending entry, e.g. `components.1.factors[2]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::coeff::{FGModule, Matrix, ModuleMap, Ring};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::localization::TSet;
use crate::model::{Certified, DescentData};
use crate::monoidal::tensor;
use crate::presentation::{AComplex, AddCategory};
use crate::spectra::{Spectrum, SymSeq};

pub const FORMAT_VERSION: u64 = 1;

/// A type with a JSON encoding.
pub trait Wire: Sized {
    fn to_value(&self) -> Value;
    fn from_value(v: &Value, at: &Path) -> Result<Self>;
}

/// A position inside a document, used in diagnostics.
#[derive(Clone, Debug, Default)]
pub struct Path(String);

impl Path {
    pub fn root() -> Self {
        Path(String::new())
    }

    pub fn key(&self, k: &str) -> Path {
        if self.0.is_empty() {
            Path(k.to_string())
        } else {
            Path(format!("{}.{k}", self.0))
        }
    }

    pub fn index(&self, i: usize) -> Path {
        Path(format!("{}[{i}]", self.0))
    }

    fn err<T>(&self, msg: impl std::fmt::Display) -> Result<T> {
        let at = if self.0.is_empty() { "<root>" } else { &self.0 };
        Err(Error::Malformed(format!("at {at}: {msg}")))
    }

    /// Wraps a constructor error with this position.
    fn wrap<T>(&self, r: Result<T>) -> Result<T> {
        r.or_else(|e| self.err(e))
    }
}

/// Parses a top-level document, checking the version field.
pub fn from_str<T: Wire>(text: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::Malformed(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let root = Path::root();
    let obj = object(&v, &root)?;
    match obj.get("format") {
        None => return root.err("missing field `format`"),
        Some(f) if f.as_u64() == Some(FORMAT_VERSION) => {}
        Some(f) => return root.key("format").err(format!("unsupported version {f}, expected {FORMAT_VERSION}")),
    }
    T::from_value(&v, &root)
}

/// Serializes a top-level document with the version field; keys are sorted.
pub fn to_string<T: Wire>(x: &T) -> String {
    let mut v = x.to_value();
    if let Value::Object(m) = &mut v {
        m.insert("format".into(), json!(FORMAT_VERSION));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn read_file<T: Wire>(path: &std::path::Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    from_str(&text).map_err(|e| match e {
        Error::Malformed(m) => Error::Malformed(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn object<'a>(v: &'a Value, at: &Path) -> Result<&'a Map<String, Value>> {
    v.as_object().map_or_else(|| at.err("expected an object"), Ok)
}

fn array<'a>(v: &'a Value, at: &Path) -> Result<&'a Vec<Value>> {
    v.as_array().map_or_else(|| at.err("expected an array"), Ok)
}

fn field<'a>(obj: &'a Map<String, Value>, k: &str, at: &Path) -> Result<&'a Value> {
    obj.get(k).map_or_else(|| at.err(format!("missing field `{k}`")), Ok)
}

fn int_to_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

/// Integers are JSON numbers, or decimal strings when they do not fit in 64 bits.
fn int(v: &Value, at: &Path) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(i.into());
    }
    if let Some(u) = v.as_u64() {
        return Ok(u.into());
    }
    if let Some(s) = v.as_str() {
        if let Ok(x) = s.parse::<BigInt>() {
            return Ok(x);
        }
    }
    at.err(format!("expected an integer, got {v}"))
}

fn usize_of(v: &Value, at: &Path) -> Result<usize> {
    v.as_u64()
        .and_then(|u| usize::try_from(u).ok())
        .map_or_else(|| at.err(format!("expected a non-negative integer, got {v}")), Ok)
}

fn degree_key(k: &str, at: &Path) -> Result<i64> {
    k.parse::<i64>()
        .map_or_else(|_| at.key(k).err(format!("`{k}` is not a degree")), Ok)
}

impl Wire for Ring {
    fn to_value(&self) -> Value {
        match self {
            Ring::Integers => json!({"kind": "Z"}),
            Ring::IntegersMod(m) => json!({"kind": "Zmod", "m": int_to_value(m)}),
        }
    }

    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        let obj = object(v, at)?;
        match field(obj, "kind", at)?.as_str() {
            Some("Z") => Ok(Ring::Integers),
            Some("Zmod") => {
                let m = int(field(obj, "m", at)?, &at.key("m"))?;
                at.key("m").wrap(Ring::integers_mod(m))
            }
            _ => at.key("kind").err("expected \"Z\" or \"Zmod\""),
        }
    }
}

impl Wire for FGModule {
    fn to_value(&self) -> Value {
        json!({
            "ring": self.ring().to_value(),
            "factors": self.factors().iter().map(int_to_value).collect::<Vec<_>>(),
        })
    }

    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        module_in(v, at, None)
    }
}

/// A module; inside a complex the ring may be omitted and defaults to the
/// complex's ring.
fn module_in(v: &Value, at: &Path, ring: Option<&Ring>) -> Result<FGModule> {
    let obj = object(v, at)?;
    let own = obj.get("ring").map(|r| Ring::from_value(r, &at.key("ring"))).transpose()?;
    let ring = match (own, ring) {
        (Some(a), Some(b)) if &a != b => return at.key("ring").err(format!("ring {a} does not match {b}")),
        (Some(a), _) => a,
        (None, Some(b)) => b.clone(),
        (None, None) => return at.err("missing field `ring`"),
    };
    let fat = at.key("factors");
    let mut factors = Vec::new();
    for (i, f) in array(field(obj, "factors", at)?, &fat)?.iter().enumerate() {
        let x = int(f, &fat.index(i))?;
        if x.is_one() {
            return fat.index(i).err("factor 1 is forbidden (omit trivial summands)");
        }
        if x.is_negative() {
            return fat.index(i).err(format!("factor {x} is negative"));
        }
        factors.push(x);
    }
    at.wrap(FGModule::new(ring, factors))
}

fn matrix_to_value(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(int_to_value).collect()))
            .collect(),
    )
}

/// A list of rows with the expected shape; `[]` is accepted for any matrix
/// with no rows or no columns.
fn matrix(v: &Value, at: &Path, rows: usize, cols: usize) -> Result<Matrix> {
    let rs = array(v, at)?;
    if rs.is_empty() && (rows == 0 || cols == 0) {
        return Ok(Matrix::zeros(rows, cols));
    }
    if rs.len() != rows {
        return at.err(format!("expected {rows} rows, got {}", rs.len()));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, r) in rs.iter().enumerate() {
        let rat = at.index(i);
        let entries = array(r, &rat)?;
        if entries.len() != cols {
            return rat.err(format!("expected {cols} entries, got {}", entries.len()));
        }
        out.push(
            entries
                .iter()
                .enumerate()
                .map(|(j, x)| int(x, &rat.index(j)))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Matrix::from_rows(out, cols))
}

impl Wire for ModuleMap {
    fn to_value(&self) -> Value {
        json!({
            "source": self.source().to_value(),
            "target": self.target().to_value(),
            "matrix": matrix_to_value(self.matrix()),
        })
    }

    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        let obj = object(v, at)?;
        let source = FGModule::from_value(field(obj, "source", at)?, &at.key("source"))?;
        let target = FGModule::from_value(field(obj, "target", at)?, &at.key("target"))?;
        let m = matrix(field(obj, "matrix", at)?, &at.key("matrix"), target.rank(), source.rank())?;
        at.wrap(ModuleMap::new(source, target, m))
    }
}

impl Wire for Complex {
    fn to_value(&self) -> Value {
        let mut components = Map::new();
        let mut differentials = Map::new();
        for n in self.degrees() {
            let mut m = self.module(n).to_value();
            m.as_object_mut().expect("object").remove("ring");
            components.insert(n.to_string(), m);
            let d = self.d(n);
            if !d.is_zero() {
                differentials.insert(n.to_string(), matrix_to_value(&d));
            }
        }
        json!({
            "ring": self.ring().to_value(),
            "components": components,
            "differentials": differentials,
        })
    }

    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        let obj = object(v, at)?;
        let ring = Ring::from_value(field(obj, "ring", at)?, &at.key("ring"))?;
        let cat = at.key("components");
        let mut components = BTreeMap::new();
        for (k, m) in object(field(obj, "components", at)?, &cat)? {
            components.insert(degree_key(k, &cat)?, module_in(m, &cat.key(k), Some(&ring))?);
        }
        let dat = at.key("differentials");
        let zero = FGModule::zero(ring.clone());
        let rank = |n: i64| components.get(&n).unwrap_or(&zero).rank();
        let mut differentials = BTreeMap::new();
        if let Some(ds) = obj.get("differentials") {
            for (k, d) in object(ds, &dat)? {
                let n = degree_key(k, &dat)?;
                differentials.insert(n, matrix(d, &dat.key(k), rank(n + 1), rank(n))?);
            }
        }
        at.wrap(Complex::new(ring, components, differentials))
    }
}

/// Degree-indexed matrices of a map whose ends are known; zero blocks are omitted.
fn components_to_value(f: &ChainMap) -> Value {
    let mut out = Map::new();
    let degrees = f.source().degrees().chain(f.target().degrees());
    for n in degrees.collect::<std::collections::BTreeSet<_>>() {
        let m = f.matrix(n);
        if !m.is_zero() {
            out.insert(n.to_string(), matrix_to_value(&m));
        }
    }
    Value::Object(out)
}

fn components(v: &Value, at: &Path, source: &Complex, target: &Complex) -> Result<ChainMap> {
    let mut out = BTreeMap::new();
    for (k, m) in object(v, at)? {
        let n = degree_key(k, at)?;
        out.insert(n, matrix(m, &at.key(k), target.rank(n), source.rank(n))?);
    }
    at.wrap(ChainMap::new(source.clone(), target.clone(), out))
}

impl Wire for ChainMap {
    fn to_value(&self) -> Value {
        json!({
            "source": self.source().to_value(),
            "target": self.target().to_value(),
            "components": components_to_value(self),
        })
    }

    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        let obj = object(v, at)?;
        let source = Complex::from_value(field(obj, "source", at)?, &at.key("source"))?;
        let target = Complex::from_value(field(obj, "target", at)?, &at.key("target"))?;
        components(field(obj, "components", at)?, &at.key("components"), &source, &target)
    }
}

fn list<T>(v: &Value, at: &Path, f: impl Fn(&Value, &Path) -> Result<T>) -> Result<Vec<T>> {
    array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| f(x, &at.index(i)))
        .collect()
}

impl Wire for Spectrum {
    /// `actions[n][k]` is `s_k` on level `n`, `assembly[n] : S ⊗ E_n → E_{n+1}`.
    fn to_value(&self) -> Value {
        let seq = self.seq();
        json!({
            "S": self.s().to_value(),
            "truncation": self.truncation(),
            "levels": seq.levels().iter().map(Wire::to_value).collect::<Vec<_>>(),
            "actions": seq.actions().iter()
                .map(|acts| acts.iter().map(components_to_value).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "assembly": self.assembly().iter().map(components_to_value).collect::<Vec<_>>(),
        })
    }

    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        let obj = object(v, at)?;
        let s = Complex::from_value(field(obj, "S", at)?, &at.key("S"))?;
        let big_n = usize_of(field(obj, "truncation", at)?, &at.key("truncation"))?;
        let lat = at.key("levels");
        let levels = list(field(obj, "levels", at)?, &lat, Complex::from_value)?;
        if levels.len() != big_n + 1 {
            return lat.err(format!("truncation {big_n} needs {} levels, got {}", big_n + 1, levels.len()));
        }
        for (n, l) in levels.iter().enumerate() {
            if l.ring() != s.ring() {
                return lat.index(n).err(format!("ring {} does not match S over {}", l.ring(), s.ring()));
            }
        }
        let aat = at.key("actions");
        let raw = array(field(obj, "actions", at)?, &aat)?;
        if raw.len() != levels.len() {
            return aat.err(format!("expected {} action lists, got {}", levels.len(), raw.len()));
        }
        let mut actions = Vec::new();
        for (n, acts) in raw.iter().enumerate() {
            let at_n = aat.index(n);
            let acts = array(acts, &at_n)?;
            if acts.len() != n.saturating_sub(1) {
                return at_n.err(format!("level {n} needs {} transpositions, got {}", n.saturating_sub(1), acts.len()));
            }
            actions.push(
                acts.iter()
                    .enumerate()
                    .map(|(k, a)| components(a, &at_n.index(k), &levels[n], &levels[n]))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let sat = at.key("assembly");
        let raw = array(field(obj, "assembly", at)?, &sat)?;
        if raw.len() != big_n {
            return sat.err(format!("expected {big_n} assembly maps, got {}", raw.len()));
        }
        let mut assembly = Vec::new();
        for (n, a) in raw.iter().enumerate() {
            let source = sat.index(n).wrap(tensor(&s, &levels[n]))?;
            assembly.push(components(a, &sat.index(n), &source, &levels[n + 1])?);
        }
        // Coxeter relations and equivariance are left to validation.
        let seq = SymSeq::new_unchecked(s.ring().clone(), levels, actions);
        Ok(Spectrum::new_unchecked(s, seq, assembly))
    }
}

impl Wire for AddCategory {
    fn to_value(&self) -> Value {
        json!({"ring": self.ring().to_value(), "ranks": self.ranks()})
    }

    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        let obj = object(v, at)?;
        let ring = Ring::from_value(field(obj, "ring", at)?, &at.key("ring"))?;
        let ranks = list(field(obj, "ranks", at)?, &at.key("ranks"), usize_of)?;
        at.wrap(AddCategory::new(ring, ranks))
    }
}

impl Wire for AComplex {
    /// `inj[o][k] = M(ι_k) : M(o) → M(R)`, `proj[o][k] = M(π_k) : M(R) → M(o)`.
    fn to_value(&self) -> Value {
        let maps = |l: &[Vec<ChainMap>]| {
            l.iter()
                .map(|fs| fs.iter().map(components_to_value).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        json!({
            "category": self.category().to_value(),
            "values": self.values().iter().map(Wire::to_value).collect::<Vec<_>>(),
            "inj": maps(self.inj()),
            "proj": maps(self.proj()),
        })
    }

    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        let obj = object(v, at)?;
        let cat = AddCategory::from_value(field(obj, "category", at)?, &at.key("category"))?;
        let vat = at.key("values");
        let values = list(field(obj, "values", at)?, &vat, Complex::from_value)?;
        if values.len() != cat.len() {
            return vat.err(format!("expected {} values, got {}", cat.len(), values.len()));
        }
        let u = cat.unit();
        let maps = |key: &str, into_unit: bool| -> Result<Vec<Vec<ChainMap>>> {
            let kat = at.key(key);
            let raw = array(field(obj, key, at)?, &kat)?;
            if raw.len() != cat.len() {
                return kat.err(format!("expected {} lists, got {}", cat.len(), raw.len()));
            }
            raw.iter()
                .enumerate()
                .map(|(o, fs)| {
                    let oat = kat.index(o);
                    let fs = array(fs, &oat)?;
                    if fs.len() != cat.ranks()[o] {
                        return oat.err(format!("expected {} maps, got {}", cat.ranks()[o], fs.len()));
                    }
                    fs.iter()
                        .enumerate()
                        .map(|(k, f)| {
                            let (s, t) = if into_unit { (&values[o], &values[u]) } else { (&values[u], &values[o]) };
                            components(f, &oat.index(k), s, t)
                        })
                        .collect()
                })
                .collect()
        };
        let inj = maps("inj", true)?;
        let proj = maps("proj", false)?;
        at.wrap(AComplex::new(cat, values, inj, proj))
    }
}

impl Wire for DescentData {
    /// Members of `ℋ` must be degreewise free; their cell structure is rebuilt on load.
    fn to_value(&self) -> Value {
        json!({
            "ring": self.ring().to_value(),
            "generators": self.generators().iter().map(Wire::to_value).collect::<Vec<_>>(),
            "acyclics": self.acyclics().iter().map(|h| h.complex.to_value()).collect::<Vec<_>>(),
        })
    }

    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        let obj = object(v, at)?;
        let ring = Ring::from_value(field(obj, "ring", at)?, &at.key("ring"))?;
        let generators = list(field(obj, "generators", at)?, &at.key("generators"), |g, p| {
            module_in(g, p, Some(&ring))
        })?;
        let acyclics = match obj.get("acyclics") {
            None => Vec::new(),
            Some(hs) => list(hs, &at.key("acyclics"), |h, p| {
                let c = Complex::from_value(h, p)?;
                p.wrap(Certified::free(&c))
            })?,
        };
        at.wrap(DescentData::new(ring, generators, acyclics))
    }
}

/// `𝒯` together with the descent structure used for its cofibrant models.
#[derive(Clone, Debug)]
pub struct TSetDoc {
    pub descent: DescentData,
    pub tset: TSet,
}

impl Wire for TSetDoc {
    fn to_value(&self) -> Value {
        json!({
            "descent": self.descent.to_value(),
            "complexes": self.tset.complexes().iter().map(Wire::to_value).collect::<Vec<_>>(),
        })
    }

    /// Without `descent`, the frees over the ring of the first complex are used.
    fn from_value(v: &Value, at: &Path) -> Result<Self> {
        let obj = object(v, at)?;
        let complexes = list(field(obj, "complexes", at)?, &at.key("complexes"), Complex::from_value)?;
        let descent = match obj.get("descent") {
            Some(d) => DescentData::from_value(d, &at.key("descent"))?,
            None => match complexes.first() {
                Some(c) => DescentData::frees(c.ring()),
                None => return at.key("complexes").err("an empty set needs an explicit `descent`"),
            },
        };
        let tset = at.wrap(TSet::new(complexes, &descent))?;
        Ok(TSetDoc { descent, tset })
    }
}

#[cfg(test)]
mod tests;
