//! JSON documents for seeds, diagrams, theta functions, product tables and
//! reports. Rationals travel as strings ("p/q" or integers).

use crate::cone_geom::Cone;
use crate::error::{Error, Result};
use crate::lattice_seed::{principal_extension, FixedData, Seed};
use crate::poly_ring::{Laurent, Naming};
use crate::rational::{fmt_q, parse_q, Q};
use crate::scattering::{Diagram, Shear, Wall, EXACT};
use crate::theta::ThetaExpansion;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn bad(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

fn parse_all(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| parse_q(s).ok_or_else(|| bad(format!("bad rational '{s}'")))).collect()
}

fn fmt_all(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedDocument {
    pub rank: usize,
    /// the skew form on the initial basis
    pub skew: Vec<Vec<String>>,
    pub d: Vec<i64>,
    /// 0-based frozen indices
    #[serde(default)]
    pub frozen: Vec<usize>,
    #[serde(default)]
    pub name: String,
}

impl SeedDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }

    pub fn fixed_data(&self) -> Result<FixedData> {
        if self.skew.len() != self.rank || self.d.len() != self.rank {
            return Err(Error::InvalidData("rank does not match the matrix".into()));
        }
        let skew = self.skew.iter().map(|r| parse_all(r)).collect::<Result<Vec<_>>>()?;
        FixedData::new(skew, self.d.clone(), &self.frozen)
    }

    pub fn from_fixed_data(fd: &FixedData, name: &str) -> Self {
        SeedDocument {
            rank: fd.rank(),
            skew: fd.skew.iter().map(|r| fmt_all(r)).collect(),
            d: fd.d.clone(),
            frozen: (0..fd.rank()).filter(|&i| fd.frozen[i]).collect(),
            name: name.to_string(),
        }
    }

    /// The fixed data and initial seed, optionally replaced by principal coefficients.
    pub fn load(&self, principal: bool) -> Result<(FixedData, Seed)> {
        let fd = self.fixed_data()?;
        let s = Seed::identity(fd.rank());
        Ok(if principal { principal_extension(&fd, &s) } else { (fd, s) })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportDocument {
    pub eq: Vec<Vec<i64>>,
    pub ineq: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallDocument {
    pub normal: Vec<i64>,
    pub support: SupportDocument,
    pub coeffs: Vec<String>,
    pub incoming: bool,
    /// rendered wall function
    pub function: String,
    /// highest reliable power of the wall variable; absent when exact
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trust: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedState {
    pub basis: Vec<Vec<i64>>,
    pub path: Vec<usize>,
}

impl SeedState {
    fn of(s: &Seed) -> Self {
        SeedState { basis: s.basis.clone(), path: s.path.clone() }
    }

    fn seed(&self) -> Seed {
        Seed { basis: self.basis.clone(), path: self.path.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShearDocument {
    pub k: usize,
    pub seed: SeedState,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub fixed_data: SeedDocument,
    /// names the last half of the coordinates `X1..` when set
    #[serde(default)]
    pub principal: bool,
    pub seed: SeedState,
    pub order: u32,
    pub walls: Vec<WallDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shears: Vec<ShearDocument>,
}

pub fn naming(rank: usize, principal: bool) -> Naming {
    if principal {
        Naming { a_vars: rank / 2 }
    } else {
        Naming::plain(rank)
    }
}

/// `f` of a wall as a Laurent polynomial: `1 + sum c_l z^{l p^*(n0)}`.
pub fn wall_laurent(fd: &FixedData, w: &Wall) -> Laurent {
    let r = fd.rank();
    let v = fd.pstar(&w.normal);
    let mut l = Laurent::constant(r, Q::from_integer(1.into()));
    for (i, c) in w.coeffs.iter().enumerate() {
        let e = v.iter().map(|x| x * (i as i64 + 1)).collect();
        l.add_term(e, c.clone());
    }
    l
}

impl DiagramDocument {
    pub fn of(d: &Diagram, name: &str, principal: bool) -> Self {
        let nm = naming(d.rank(), principal);
        DiagramDocument {
            fixed_data: SeedDocument::from_fixed_data(&d.fd, name),
            principal,
            seed: SeedState::of(&d.seed),
            order: d.order,
            walls: d
                .walls
                .iter()
                .map(|w| WallDocument {
                    normal: w.normal.clone(),
                    support: SupportDocument { eq: w.support.eqs.clone(), ineq: w.support.ineqs.clone() },
                    coeffs: fmt_all(&w.coeffs),
                    incoming: w.is_incoming(&d.fd),
                    function: wall_laurent(&d.fd, w).render(nm),
                    trust: (w.trust != EXACT).then_some(w.trust),
                })
                .collect(),
            shears: d.shears.iter().map(|s| ShearDocument { k: s.k, seed: SeedState::of(&s.seed) }).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }

    pub fn diagram(&self) -> Result<Diagram> {
        let fd = self.fixed_data.fixed_data()?;
        let r = fd.rank();
        let mut walls = Vec::with_capacity(self.walls.len());
        for w in &self.walls {
            let dims_ok = w.normal.len() == r
                && w.support.eq.iter().chain(&w.support.ineq).all(|row| row.len() == r)
                && w.normal.iter().any(|&x| x != 0);
            if !dims_ok {
                return Err(bad("wall has the wrong dimension"));
            }
            let cov = fd.n_covector(&w.normal);
            let support = Cone::new(r, w.support.eq.clone(), w.support.ineq.clone());
            if support.dimension() + 1 != r {
                return Err(bad("wall support is not a codimension-one cone"));
            }
            if !Cone::hyperplane(r, &cov).contains_cone(&support) {
                return Err(bad("wall support does not lie in the normal hyperplane"));
            }
            walls.push(Wall {
                normal: w.normal.clone(),
                cov,
                support,
                coeffs: parse_all(&w.coeffs)?,
                trust: w.trust.unwrap_or(EXACT),
            });
        }
        Ok(Diagram {
            fd,
            seed: self.seed.seed(),
            order: self.order,
            walls,
            shears: self.shears.iter().map(|s| Shear { k: s.k, seed: s.seed.seed() }).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDocument {
    pub exponent: Vec<i64>,
    pub coeff: String,
}

pub fn terms_of(l: &Laurent) -> Vec<TermDocument> {
    l.terms.iter().map(|(e, c)| TermDocument { exponent: e.clone(), coeff: fmt_q(c) }).collect()
}

pub fn laurent_of(terms: &[TermDocument]) -> Result<Laurent> {
    let mut l = Laurent::zero();
    for t in terms {
        l.add_term(t.exponent.clone(), parse_q(&t.coeff).ok_or_else(|| bad("bad coefficient"))?);
    }
    Ok(l)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaDocument {
    pub name: String,
    pub m0: Vec<i64>,
    pub order: u32,
    pub basepoint: Vec<String>,
    /// mutation path of the chamber the basepoint was drawn from
    pub chamber: Option<Vec<usize>>,
    pub broken_lines: usize,
    pub polynomial: String,
    pub terms: Vec<TermDocument>,
}

impl ThetaDocument {
    pub fn of(t: &ThetaExpansion, name: &str, principal: bool) -> Self {
        ThetaDocument {
            name: name.to_string(),
            m0: t.m0.clone(),
            order: t.order,
            basepoint: fmt_all(&t.basepoint),
            chamber: t.chamber.clone(),
            broken_lines: t.lines,
            polynomial: t.poly.render(naming(t.m0.len(), principal)),
            terms: terms_of(&t.poly),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| bad(e.to_string()))
    }

    pub fn expansion(&self) -> Result<ThetaExpansion> {
        Ok(ThetaExpansion {
            basepoint: parse_all(&self.basepoint)?,
            chamber: self.chamber.clone(),
            m0: self.m0.clone(),
            order: self.order,
            poly: laurent_of(&self.terms)?,
            lines: self.broken_lines,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub q: Vec<i64>,
    pub alpha: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDocument {
    pub name: String,
    pub p1: Vec<i64>,
    pub p2: Vec<i64>,
    pub order: u32,
    /// every constant was confirmed at two sampling distances
    pub stabilized: bool,
    pub entries: Vec<ProductEntry>,
}

impl ProductDocument {
    /// The table is stored with `p1 <= p2` so that swapped arguments give the same bytes.
    pub fn of(name: &str, p1: &[i64], p2: &[i64], order: u32, table: &BTreeMap<Vec<i64>, Q>) -> Self {
        let (a, b) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        ProductDocument {
            name: name.to_string(),
            p1: a.to_vec(),
            p2: b.to_vec(),
            order,
            stabilized: true,
            entries: table.iter().map(|(q, a)| ProductEntry { q: q.clone(), alpha: fmt_q(a) }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub name: String,
    pub order: u32,
    pub rng_seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl ReportDocument {
    pub fn new(name: &str, order: u32, rng_seed: u64, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        ReportDocument { name: name.to_string(), order, rng_seed, pass, checks }
    }
}

/// Pretty JSON with a trailing newline; field order follows the type definitions.
pub fn emit<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}
