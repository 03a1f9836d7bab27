//! JSON file formats.
//!
//! Every top-level document is an object with `"format": 1` and a `"kind"`
//! tag. Group elements are coordinate lists, characters are exponent lists,
//! and cochain arguments are element indices in mixed-radix order (first
//! coordinate most significant). Exact scalars are `{"int": z}`,
//! `{"zeta_pow": e}`, their product `{"int": z, "zeta_pow": e}`, or
//! `{"sum": [...]}`, with `ζ` a primitive root of order `root_order`.

use cocycle_core::abelian::{AbelianCocycle, QuadraticForm};
use cocycle_core::breen::TrilinearForm;
use cocycle_core::cochain::Cochain;
use cocycle_core::cqha::{Antipode, CoquasiData, QlsDatum};
use cocycle_core::cyclotomic::{Cyc, CycRing};
use cocycle_core::nichols::DiagonalDatum;
use cocycle_core::pointed::ExtensionDatum;
use cocycle_core::{Character, FinAbGroup, GroupElement, GroupHom};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const FORMAT: u32 = 1;

/// Reads a top-level document, checking `format` and `kind`.
pub fn parse_document<T: DeserializeOwned>(text: &str, kind: &str) -> Result<T, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    check_envelope(&v, &[kind])?;
    body_of(v, kind)
}

/// Deserializes a document body, ignoring the envelope fields.
pub fn body_of<T: DeserializeOwned>(mut v: Value, kind: &str) -> Result<T, CliError> {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("format");
        obj.remove("kind");
    }
    serde_json::from_value(v).map_err(|e| CliError::Parse(format!("{kind}: {e}")))
}

/// Verifies the envelope and returns the `kind` tag.
pub fn check_envelope<'a>(v: &'a Value, kinds: &[&str]) -> Result<&'a str, CliError> {
    match v.get("format").and_then(Value::as_u64) {
        Some(f) if f == FORMAT as u64 => {}
        Some(f) => return Err(CliError::Parse(format!("unsupported format version {f}"))),
        None => return Err(CliError::Parse("missing \"format\" field".into())),
    }
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Parse("missing \"kind\" field".into()))?;
    if !kinds.contains(&kind) {
        return Err(CliError::Parse(format!("expected a document of kind {}, found {kind:?}", kinds.join(" or "))));
    }
    Ok(kind)
}

/// Wraps a serialized body with the `format` and `kind` fields.
pub fn document<T: Serialize>(kind: &str, body: &T) -> Value {
    let mut v = serde_json::to_value(body).expect("serializable body");
    let obj = v.as_object_mut().expect("bodies are JSON objects");
    obj.insert("format".into(), FORMAT.into());
    obj.insert("kind".into(), kind.into());
    v
}

fn checked<T>(r: cocycle_core::Result<T>) -> Result<T, CliError> {
    r.map_err(CliError::from)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub invariant_factors: Vec<u64>,
}

impl GroupJson {
    pub fn from_group(g: &FinAbGroup) -> Self {
        GroupJson { invariant_factors: g.invariant_factors().to_vec() }
    }

    pub fn to_group(&self) -> Result<FinAbGroup, CliError> {
        checked(FinAbGroup::new(&self.invariant_factors))
    }
}

pub fn element_json(g: &GroupElement) -> Vec<u64> {
    g.coords().to_vec()
}

pub fn parse_element(g: &FinAbGroup, coords: &[u64]) -> Result<GroupElement, CliError> {
    checked(g.element(coords))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub group: GroupJson,
    pub degree: usize,
    pub modulus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<u64>>,
    /// `[a_1, …, a_k, exponent]` with omitted entries zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sparse: Option<Vec<Vec<i64>>>,
}

impl CochainJson {
    pub fn from_cochain(c: &Cochain) -> Self {
        CochainJson {
            group: GroupJson::from_group(c.group()),
            degree: c.degree(),
            modulus: c.modulus(),
            entries: Some(c.table().to_vec()),
            sparse: None,
        }
    }

    pub fn to_cochain(&self) -> Result<Cochain, CliError> {
        let g = self.group.to_group()?;
        match (&self.entries, &self.sparse) {
            (Some(t), None) => checked(Cochain::new(g, self.degree, self.modulus, t.clone())),
            (None, Some(rows)) => {
                let mut entries = Vec::with_capacity(rows.len());
                for row in rows {
                    if row.len() != self.degree + 1 || row[..self.degree].iter().any(|&a| a < 0) {
                        return Err(CliError::Parse(format!("sparse entry {row:?} needs {} indices and an exponent", self.degree)));
                    }
                    let args = row[..self.degree].iter().map(|&a| a as usize).collect();
                    entries.push((args, row[self.degree]));
                }
                checked(Cochain::from_sparse(&g, self.degree, self.modulus, &entries))
            }
            _ => Err(CliError::Parse("a cochain needs exactly one of \"entries\" or \"sparse\"".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    pub source: GroupJson,
    pub target: GroupJson,
    /// Image of each source generator.
    pub images: Vec<Vec<u64>>,
}

impl HomJson {
    pub fn from_hom(p: &GroupHom) -> Self {
        HomJson {
            source: GroupJson::from_group(p.source()),
            target: GroupJson::from_group(p.target()),
            images: p.images().iter().map(element_json).collect(),
        }
    }

    pub fn to_hom(&self) -> Result<GroupHom, CliError> {
        let s = self.source.to_group()?;
        let t = self.target.to_group()?;
        let images = self.images.iter().map(|c| parse_element(&t, c)).collect::<Result<_, _>>()?;
        checked(GroupHom::new(s, t, images))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrilinearJson {
    pub modulus: u64,
    /// Exponent on `(e_i, e_j, e_k)` at position `(i·m + j)·m + k`.
    pub coeffs: Vec<u64>,
}

impl TrilinearJson {
    pub fn from_form(t: &TrilinearForm) -> Self {
        TrilinearJson { modulus: t.modulus(), coeffs: t.coeffs().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticFormJson {
    pub group: GroupJson,
    pub modulus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diag: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross: Option<Vec<Vec<u64>>>,
}

impl QuadraticFormJson {
    pub fn from_form(q: &QuadraticForm) -> Self {
        QuadraticFormJson {
            group: GroupJson::from_group(q.group()),
            modulus: q.modulus(),
            values: Some(q.values().to_vec()),
            diag: None,
            cross: None,
        }
    }

    pub fn to_form(&self) -> Result<QuadraticForm, CliError> {
        let g = self.group.to_group()?;
        match (&self.values, &self.diag) {
            (Some(v), None) if self.cross.is_none() => checked(QuadraticForm::new(&g, self.modulus, v.clone())),
            (None, Some(d)) => {
                let r = g.rank();
                let cross = self.cross.clone().unwrap_or_else(|| vec![vec![0; r]; r]);
                checked(QuadraticForm::from_coefficients(&g, self.modulus, d, &cross))
            }
            _ => Err(CliError::Parse("a quadratic form needs \"values\" or \"diag\" (with optional \"cross\")".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianPairJson {
    pub omega: CochainJson,
    pub c: CochainJson,
}

impl AbelianPairJson {
    pub fn from_pair(ac: &AbelianCocycle) -> Self {
        AbelianPairJson { omega: CochainJson::from_cochain(&ac.omega), c: CochainJson::from_cochain(&ac.c) }
    }

    pub fn to_pair(&self) -> Result<AbelianCocycle, CliError> {
        checked(AbelianCocycle::new(self.omega.to_cochain()?, self.c.to_cochain()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    pub a: GroupJson,
    pub b: GroupJson,
    /// `alpha[i·|A| + j]` is the exponent list of the character `α(a_i, a_j)`.
    pub alpha: Vec<Vec<u64>>,
}

impl ExtensionJson {
    pub fn from_datum(d: &ExtensionDatum) -> Self {
        ExtensionJson {
            a: GroupJson::from_group(d.a()),
            b: GroupJson::from_group(d.b()),
            alpha: d.table().iter().map(|c| c.exponents().to_vec()).collect(),
        }
    }

    pub fn to_datum(&self) -> Result<ExtensionDatum, CliError> {
        let a = self.a.to_group()?;
        let b = self.b.to_group()?;
        let table = self.alpha.iter().map(|e| checked(Character::new(&b, e))).collect::<Result<_, _>>()?;
        checked(ExtensionDatum::new(a, b, table))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidingJson {
    pub modulus: u64,
    /// Rows of the exponent matrix: `q_ij = ζ^{q[i][j]}`.
    pub q: Vec<Vec<u64>>,
}

impl BraidingJson {
    pub fn from_datum(d: &DiagonalDatum) -> Self {
        let th = d.rank();
        BraidingJson { modulus: d.modulus(), q: (0..th).map(|i| (0..th).map(|j| d.q(i, j)).collect()).collect() }
    }

    pub fn to_datum(&self) -> Result<DiagonalDatum, CliError> {
        let th = self.q.len();
        if th == 0 || self.q.iter().any(|r| r.len() != th) {
            return Err(CliError::Parse("braiding matrix must be square and nonempty".into()));
        }
        checked(DiagonalDatum::new(th, self.modulus, self.q.concat()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QlsJson {
    pub omega: CochainJson,
    pub p: HomJson,
    pub alpha: CochainJson,
    pub g1: Vec<u64>,
    pub chi1: Vec<u64>,
    pub n: u32,
}

impl QlsJson {
    pub fn from_datum(d: &QlsDatum) -> Self {
        QlsJson {
            omega: CochainJson::from_cochain(d.omega()),
            p: HomJson::from_hom(d.p()),
            alpha: CochainJson::from_cochain(d.alpha()),
            g1: element_json(d.g1()),
            chi1: d.chi1().exponents().to_vec(),
            n: d.height(),
        }
    }

    pub fn to_datum(&self) -> Result<QlsDatum, CliError> {
        let p = self.p.to_hom()?;
        let g1 = parse_element(p.source(), &self.g1)?;
        let chi1 = checked(Character::new(p.source(), &self.chi1))?;
        checked(QlsDatum::new(self.omega.to_cochain()?, p, self.alpha.to_cochain()?, g1, chi1, self.n))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub int: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_pow: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sum: Option<Vec<ScalarJson>>,
}

impl ScalarJson {
    fn term(z: i64, e: u64) -> Self {
        match (z, e) {
            (z, 0) => ScalarJson { int: Some(z), ..Default::default() },
            (1, e) => ScalarJson { zeta_pow: Some(e as i64), ..Default::default() },
            (z, e) => ScalarJson { int: Some(z), zeta_pow: Some(e as i64), ..Default::default() },
        }
    }

    pub fn from_cyc(ring: &CycRing, c: &Cyc) -> Self {
        if ring.is_zero(c) {
            return ScalarJson::term(0, 0);
        }
        if let Some((z, e)) = ring.as_scaled_root(c) {
            return ScalarJson::term(z, e);
        }
        let terms = c
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(k, &x)| ScalarJson::term(x, k as u64))
            .collect();
        ScalarJson { sum: Some(terms), ..Default::default() }
    }

    pub fn to_cyc(&self, ring: &CycRing) -> Result<Cyc, CliError> {
        match self {
            ScalarJson { int: None, zeta_pow: None, sum: Some(terms) } => {
                let mut acc = ring.zero();
                for t in terms {
                    ring.add_assign(&mut acc, &t.to_cyc(ring)?);
                }
                Ok(acc)
            }
            ScalarJson { sum: None, int, zeta_pow } if int.is_some() || zeta_pow.is_some() => {
                Ok(ring.mul(&ring.int(int.unwrap_or(1)), &ring.root(zeta_pow.unwrap_or(0))))
            }
            _ => Err(CliError::Parse("a scalar is {\"int\"}, {\"zeta_pow\"}, both, or {\"sum\"}".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntipodeJson {
    pub s: Vec<Vec<(usize, ScalarJson)>>,
    pub alpha: Vec<ScalarJson>,
    pub beta: Vec<ScalarJson>,
}

/// Structure tables. `mul[i·d + j]` and `comul[i]` are sparse expansions;
/// `omega`, `omega_inv` and `r_form` list only nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoquasiJson {
    pub root_order: u64,
    pub labels: Vec<String>,
    pub unit: usize,
    pub counit: Vec<ScalarJson>,
    pub mul: Vec<Vec<(usize, ScalarJson)>>,
    pub comul: Vec<Vec<(usize, usize, ScalarJson)>>,
    pub omega: Vec<(usize, usize, usize, ScalarJson)>,
    pub omega_inv: Vec<(usize, usize, usize, ScalarJson)>,
    #[serde(default)]
    pub antipode: Option<AntipodeJson>,
    #[serde(default)]
    pub r_form: Option<Vec<(usize, usize, ScalarJson)>>,
}

impl CoquasiJson {
    pub fn from_data(h: &CoquasiData) -> Self {
        let r = &h.ring;
        let s = |c: &Cyc| ScalarJson::from_cyc(r, c);
        let d = h.dim();
        let sparse3 = |t: &[Cyc]| {
            t.iter()
                .enumerate()
                .filter(|(_, c)| !r.is_zero(c))
                .map(|(idx, c)| (idx / (d * d), idx / d % d, idx % d, s(c)))
                .collect()
        };
        CoquasiJson {
            root_order: r.order(),
            labels: h.labels.clone(),
            unit: h.unit,
            counit: h.counit.iter().map(s).collect(),
            mul: h.mul.iter().map(|v| v.iter().map(|(k, c)| (*k, s(c))).collect()).collect(),
            comul: h.comul.iter().map(|t| t.iter().map(|(a, b, c)| (*a, *b, s(c))).collect()).collect(),
            omega: sparse3(&h.omega),
            omega_inv: sparse3(&h.omega_inv),
            antipode: h.antipode.as_ref().map(|a| AntipodeJson {
                s: a.s.iter().map(|v| v.iter().map(|(k, c)| (*k, s(c))).collect()).collect(),
                alpha: a.alpha.iter().map(s).collect(),
                beta: a.beta.iter().map(s).collect(),
            }),
            r_form: h.r_form.as_ref().map(|t| {
                t.iter()
                    .enumerate()
                    .filter(|(_, c)| !r.is_zero(c))
                    .map(|(idx, c)| (idx / d, idx % d, s(c)))
                    .collect()
            }),
        }
    }

    pub fn to_data(&self) -> Result<CoquasiData, CliError> {
        let ring = checked(CycRing::new(self.root_order))?;
        let d = self.labels.len();
        let sc = |x: &ScalarJson| x.to_cyc(&ring);
        let vector = |v: &[(usize, ScalarJson)]| -> Result<Vec<(usize, Cyc)>, CliError> {
            let mut out: Vec<(usize, Cyc)> = Vec::with_capacity(v.len());
            for (k, c) in v {
                if *k >= d {
                    return Err(CliError::Parse(format!("basis index {k} out of range")));
                }
                out.push((*k, sc(c)?));
            }
            canonical_vector(&ring, out)
        };
        let dense3 = |entries: &[(usize, usize, usize, ScalarJson)]| -> Result<Vec<Cyc>, CliError> {
            let mut t = vec![ring.zero(); d * d * d];
            for (i, j, k, c) in entries {
                if *i >= d || *j >= d || *k >= d {
                    return Err(CliError::Parse("Omega index out of range".into()));
                }
                t[(i * d + j) * d + k] = sc(c)?;
            }
            Ok(t)
        };
        let mut comul = Vec::with_capacity(d);
        for t in &self.comul {
            let mut row = Vec::with_capacity(t.len());
            for (a, b, c) in t {
                if *a >= d || *b >= d {
                    return Err(CliError::Parse("coproduct index out of range".into()));
                }
                row.push((*a, *b, sc(c)?));
            }
            row.sort_by_key(|x| (x.0, x.1));
            row.retain(|x| !ring.is_zero(&x.2));
            comul.push(row);
        }
        let antipode = match &self.antipode {
            None => None,
            Some(a) => Some(Antipode {
                s: a.s.iter().map(|v| vector(v)).collect::<Result<_, _>>()?,
                alpha: a.alpha.iter().map(sc).collect::<Result<_, _>>()?,
                beta: a.beta.iter().map(sc).collect::<Result<_, _>>()?,
            }),
        };
        let r_form = match &self.r_form {
            None => None,
            Some(entries) => {
                let mut t = vec![ring.zero(); d * d];
                for (i, j, c) in entries {
                    if *i >= d || *j >= d {
                        return Err(CliError::Parse("r-form index out of range".into()));
                    }
                    t[i * d + j] = sc(c)?;
                }
                Some(t)
            }
        };
        let h = CoquasiData {
            labels: self.labels.clone(),
            unit: self.unit,
            counit: self.counit.iter().map(sc).collect::<Result<_, _>>()?,
            mul: self.mul.iter().map(|v| vector(v)).collect::<Result<_, _>>()?,
            comul,
            omega: dense3(&self.omega)?,
            omega_inv: dense3(&self.omega_inv)?,
            antipode,
            r_form,
            ring: ring.clone(),
        };
        checked(h.check_shape())?;
        Ok(h)
    }
}

/// Sorted by index, duplicates added, zeros dropped.
fn canonical_vector(ring: &CycRing, mut v: Vec<(usize, Cyc)>) -> Result<Vec<(usize, Cyc)>, CliError> {
    v.sort_by_key(|x| x.0);
    let mut out: Vec<(usize, Cyc)> = Vec::with_capacity(v.len());
    for (k, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == k => ring.add_assign(acc, &c),
            _ => out.push((k, c)),
        }
    }
    out.retain(|x| !ring.is_zero(&x.1));
    Ok(out)
}
