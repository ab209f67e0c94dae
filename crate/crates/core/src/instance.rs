//! Instance file format: JSON documents describing algebras, bimodules,
//! cocycles, operators, NS-structures and truncated deformations with sparse
//! 1-based coefficient triples (omitted entries are zero).
//!
//! Serialization is canonical — entries sorted, rationals reduced — so that
//! parse-then-serialize is byte-identical for files produced here.

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{matrix_from_triples, Algebra, Bimodule};
use crate::deform::{TruncatedNSDeformation, TruncatedRBDeformation};
use crate::error::{Error, Result};
use crate::multilin::{multi_indices, MultiLin};
use crate::nsop::{NSAlgebra, TaggedCochain};
use crate::qlinalg::{format_q, parse_q, Matrix};
use crate::trb::TRBContext;

/// Sparse matrix entry `[source, target, coefficient]`, 1-based:
/// the e_target coefficient of the image of e_source.
pub type Entry3 = (usize, usize, String);

/// Sparse bilinear entry `[i, j, k, coefficient]`, 1-based:
/// the e_k coefficient of m(e_i, e_j).
pub type Entry4 = (usize, usize, usize, String);

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraSection {
    pub dim: usize,
    pub mul: Vec<Entry4>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BimoduleSection {
    pub dim: usize,
    pub left: Vec<Entry4>,
    pub right: Vec<Entry4>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NsOpsSection {
    pub prec: Vec<Entry4>,
    pub succ: Vec<Entry4>,
    pub vee: Vec<Entry4>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NsSection {
    pub dim: usize,
    pub prec: Vec<Entry4>,
    pub succ: Vec<Entry4>,
    pub vee: Vec<Entry4>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub algebra: Option<AlgebraSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bimodule: Option<BimoduleSection>,
    #[serde(rename = "cocycle_H", skip_serializing_if = "Option::is_none", default)]
    pub cocycle_h: Option<Vec<Entry4>>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none", default)]
    pub operator: Option<Vec<Entry3>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ns: Option<NsSection>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub deformation_rb: Option<Vec<Vec<Entry3>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub deformation_ns: Option<Vec<NsOpsSection>>,
}

pub fn bilinear_from_entries(
    d1: usize,
    d2: usize,
    dim_out: usize,
    entries: &[Entry4],
    what: &str,
) -> Result<MultiLin> {
    let mut m = MultiLin::zero(vec![d1, d2], dim_out);
    for (i, j, k, c) in entries {
        if *i == 0 || *j == 0 || *k == 0 || *i > d1 || *j > d2 || *k > dim_out {
            return Err(Error::Parse(format!(
                "{what}: entry [{i}, {j}, {k}] outside 1-based range ({d1}, {d2}) -> {dim_out}"
            )));
        }
        m.set(&[i - 1, j - 1], k - 1, parse_q(c)?);
    }
    Ok(m)
}

pub fn bilinear_to_entries(m: &MultiLin) -> Vec<Entry4> {
    let mut out = Vec::new();
    for idx in multi_indices(m.shape_in()) {
        let v = m.at(&idx);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.push((idx[0] + 1, idx[1] + 1, k + 1, format_q(c)));
            }
        }
    }
    out
}

pub fn matrix_from_entries(rows: usize, cols: usize, entries: &[Entry3], what: &str) -> Result<Matrix> {
    let mut triples = Vec::with_capacity(entries.len());
    for (src, tgt, c) in entries {
        if *src == 0 || *tgt == 0 || *src > cols || *tgt > rows {
            return Err(Error::Parse(format!(
                "{what}: entry [{src}, {tgt}] outside 1-based range {cols} -> {rows}"
            )));
        }
        triples.push((src - 1, tgt - 1, parse_q(c)?));
    }
    matrix_from_triples(rows, cols, &triples)
}

pub fn matrix_to_entries(m: &Matrix) -> Vec<Entry3> {
    let mut out = Vec::new();
    for src in 0..m.cols {
        for tgt in 0..m.rows {
            let c = m.get(tgt, src);
            if !c.is_zero() {
                out.push((src + 1, tgt + 1, format_q(c)));
            }
        }
    }
    out
}

fn canon_q(s: &str) -> Result<String> {
    Ok(format_q(&parse_q(s)?))
}

impl InstanceFile {
    pub fn empty() -> Self {
        InstanceFile {
            field: "Q".into(),
            algebra: None,
            bimodule: None,
            cocycle_h: None,
            operator: None,
            ns: None,
            deformation_rb: None,
            deformation_ns: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let inst: InstanceFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if inst.field != "Q" {
            return Err(Error::Parse(format!(
                "unsupported field tag {:?}; only \"Q\" is supported",
                inst.field
            )));
        }
        Ok(inst)
    }

    /// Sort all sparse entry lists and reduce all rationals in place.
    pub fn canonicalize(&mut self) -> Result<()> {
        fn c4(list: &mut Vec<Entry4>) -> Result<()> {
            for e in list.iter_mut() {
                e.3 = canon_q(&e.3)?;
            }
            list.sort();
            Ok(())
        }
        fn c3(list: &mut Vec<Entry3>) -> Result<()> {
            for e in list.iter_mut() {
                e.2 = canon_q(&e.2)?;
            }
            list.sort();
            Ok(())
        }
        if let Some(a) = &mut self.algebra {
            c4(&mut a.mul)?;
        }
        if let Some(b) = &mut self.bimodule {
            c4(&mut b.left)?;
            c4(&mut b.right)?;
        }
        if let Some(h) = &mut self.cocycle_h {
            c4(h)?;
        }
        if let Some(t) = &mut self.operator {
            c3(t)?;
        }
        if let Some(ns) = &mut self.ns {
            c4(&mut ns.prec)?;
            c4(&mut ns.succ)?;
            c4(&mut ns.vee)?;
        }
        if let Some(terms) = &mut self.deformation_rb {
            for t in terms {
                c3(t)?;
            }
        }
        if let Some(terms) = &mut self.deformation_ns {
            for t in terms {
                c4(&mut t.prec)?;
                c4(&mut t.succ)?;
                c4(&mut t.vee)?;
            }
        }
        Ok(())
    }

    /// Canonical textual form: sorted entries, pretty JSON, trailing newline.
    pub fn to_canonical_string(&self) -> Result<String> {
        let mut copy = self.clone();
        copy.canonicalize()?;
        let body =
            serde_json::to_string_pretty(&copy).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(body + "\n")
    }

    /// Stable hex digest of the canonical form (FNV-1a, 64 bit).
    pub fn digest(&self) -> Result<String> {
        let text = self.to_canonical_string()?;
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in text.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        Ok(format!("{h:016x}"))
    }

    pub fn build_algebra(&self) -> Result<Algebra> {
        let sect = self
            .algebra
            .as_ref()
            .ok_or_else(|| Error::Parse("instance has no \"algebra\" section".into()))?;
        let mul = bilinear_from_entries(sect.dim, sect.dim, sect.dim, &sect.mul, "algebra.mul")?;
        Algebra::new(sect.dim, mul)
    }

    pub fn build_bimodule(&self) -> Result<Bimodule> {
        let a = self.build_algebra()?;
        match &self.bimodule {
            // no bimodule section: default to the adjoint bimodule M = A
            None => Ok(Bimodule::adjoint(&a)),
            Some(sect) => {
                let left =
                    bilinear_from_entries(a.dim, sect.dim, sect.dim, &sect.left, "bimodule.left")?;
                let right =
                    bilinear_from_entries(sect.dim, a.dim, sect.dim, &sect.right, "bimodule.right")?;
                Bimodule::new(a.dim, sect.dim, left, right)
            }
        }
    }

    pub fn build_cocycle(&self) -> Result<MultiLin> {
        let a = self.build_algebra()?;
        let m = self.build_bimodule()?;
        match &self.cocycle_h {
            None => Ok(MultiLin::zero(vec![a.dim, a.dim], m.dim)),
            Some(entries) => bilinear_from_entries(a.dim, a.dim, m.dim, entries, "cocycle_H"),
        }
    }

    pub fn build_operator(&self) -> Result<Matrix> {
        let a = self.build_algebra()?;
        let m = self.build_bimodule()?;
        match &self.operator {
            None => Err(Error::Parse("instance has no \"T\" section".into())),
            Some(entries) => matrix_from_entries(a.dim, m.dim, entries, "T"),
        }
    }

    pub fn build_trb_context(&self) -> Result<TRBContext> {
        let a = self.build_algebra()?;
        let m = self.build_bimodule()?;
        let h = self.build_cocycle()?;
        let t = self.build_operator()?;
        TRBContext::new(a, m, h, t)
    }

    pub fn build_ns(&self) -> Result<NSAlgebra> {
        let sect = self
            .ns
            .as_ref()
            .ok_or_else(|| Error::Parse("instance has no \"ns\" section".into()))?;
        let d = sect.dim;
        let prec = bilinear_from_entries(d, d, d, &sect.prec, "ns.prec")?;
        let succ = bilinear_from_entries(d, d, d, &sect.succ, "ns.succ")?;
        let vee = bilinear_from_entries(d, d, d, &sect.vee, "ns.vee")?;
        NSAlgebra::new(d, prec, succ, vee)
    }

    pub fn build_rb_deformation(&self) -> Result<TruncatedRBDeformation> {
        let ctx = self.build_trb_context()?;
        let terms = self
            .deformation_rb
            .as_ref()
            .ok_or_else(|| Error::Parse("instance has no \"deformation_rb\" section".into()))?;
        let mut higher = Vec::with_capacity(terms.len());
        for (i, entries) in terms.iter().enumerate() {
            higher.push(matrix_from_entries(
                ctx.dim_a(),
                ctx.dim_m(),
                entries,
                &format!("deformation_rb[{i}]"),
            )?);
        }
        TruncatedRBDeformation::new(ctx, higher)
    }

    pub fn build_ns_deformation(&self) -> Result<TruncatedNSDeformation> {
        let base = self.build_ns()?;
        let terms = self
            .deformation_ns
            .as_ref()
            .ok_or_else(|| Error::Parse("instance has no \"deformation_ns\" section".into()))?;
        let d = base.dim;
        let mut higher = Vec::with_capacity(terms.len());
        for (i, ops) in terms.iter().enumerate() {
            let what = format!("deformation_ns[{i}]");
            let prec = bilinear_from_entries(d, d, d, &ops.prec, &what)?;
            let succ = bilinear_from_entries(d, d, d, &ops.succ, &what)?;
            let vee = bilinear_from_entries(d, d, d, &ops.vee, &what)?;
            higher.push(TaggedCochain::from_components(d, 2, vec![prec, succ, vee])?);
        }
        TruncatedNSDeformation::new(base, higher)
    }

    // --- encoders used to produce corpus files ---

    pub fn with_algebra(mut self, a: &Algebra) -> Self {
        self.algebra = Some(AlgebraSection {
            dim: a.dim,
            mul: bilinear_to_entries(&a.mul),
        });
        self
    }

    pub fn with_bimodule(mut self, m: &Bimodule) -> Self {
        self.bimodule = Some(BimoduleSection {
            dim: m.dim,
            left: bilinear_to_entries(&m.left),
            right: bilinear_to_entries(&m.right),
        });
        self
    }

    pub fn with_cocycle(mut self, h: &MultiLin) -> Self {
        self.cocycle_h = Some(bilinear_to_entries(h));
        self
    }

    pub fn with_operator(mut self, t: &Matrix) -> Self {
        self.operator = Some(matrix_to_entries(t));
        self
    }

    pub fn from_trb_context(ctx: &TRBContext) -> Self {
        InstanceFile::empty()
            .with_algebra(&ctx.algebra)
            .with_bimodule(&ctx.bimodule)
            .with_cocycle(&ctx.cocycle)
            .with_operator(&ctx.operator)
    }

    pub fn with_ns(mut self, ns: &NSAlgebra) -> Self {
        self.ns = Some(NsSection {
            dim: ns.dim,
            prec: bilinear_to_entries(&ns.prec),
            succ: bilinear_to_entries(&ns.succ),
            vee: bilinear_to_entries(&ns.vee),
        });
        self
    }

    pub fn with_rb_deformation(mut self, d: &TruncatedRBDeformation) -> Self {
        self = Self::from_trb_context(&d.ctx);
        self.deformation_rb = Some(d.maps[1..].iter().map(matrix_to_entries).collect());
        self
    }

    pub fn with_ns_deformation(mut self, d: &TruncatedNSDeformation) -> Self {
        self = self.with_ns(&d.base);
        self.deformation_ns = Some(
            d.terms[1..]
                .iter()
                .map(|t| NsOpsSection {
                    prec: bilinear_to_entries(&t.component(1)),
                    succ: bilinear_to_entries(&t.component(2)),
                    vee: bilinear_to_entries(&t.component(3)),
                })
                .collect(),
        );
        self
    }
}
