//! Commands for algebras, cocycles and twisted Rota-Baxter contexts.

use serde_json::json;
use trb_core::algebra::{check_algebra, check_two_cocycle};
use trb_core::instance::{matrix_from_entries, Entry3, InstanceFile};
use trb_core::linfty::{linfty_jacobi_residual, mc_residual, twisted_structure};
use trb_core::multilin::MultiLin;
use trb_core::qlinalg::{format_q, parse_q, Matrix, Q};
use trb_core::sampling;
use trb_core::trb;

use super::{core_err, CliError, Command, RunContext};
use crate::report::Report;

pub fn commands() -> Vec<Box<dyn Command>> {
    vec![
        Box::new(CheckAlgebra),
        Box::new(CheckCocycle),
        Box::new(CheckTrb),
        Box::new(CohomologyTrb),
        Box::new(Gauge),
        Box::new(Shift),
        Box::new(Nijenhuis),
        Box::new(Reynolds),
        Box::new(McCheck),
        Box::new(LinftyAudit),
    ]
}

fn matrix_flag(
    ctx: &RunContext,
    path: Option<&std::path::PathBuf>,
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<Matrix, CliError> {
    let path = path
        .ok_or_else(|| CliError::Malformed(format!("{what}: expected a sparse-matrix file")))?;
    let text = ctx.read_file(path)?;
    let entries: Vec<Entry3> = serde_json::from_str(&text)
        .map_err(|e| CliError::Malformed(format!("{what}: {e}")))?;
    matrix_from_entries(rows, cols, &entries, what).map_err(core_err)
}

struct CheckAlgebra;

impl Command for CheckAlgebra {
    fn name(&self) -> &'static str {
        "check-algebra"
    }
    fn about(&self) -> &'static str {
        "verify associativity of the instance algebra on all basis triples"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let a = ctx.instance()?.build_algebra().map_err(core_err)?;
        Ok(ctx.report(self.name()).with_check(&check_algebra(&a)))
    }
}

struct CheckCocycle;

impl Command for CheckCocycle {
    fn name(&self) -> &'static str {
        "check-cocycle"
    }
    fn about(&self) -> &'static str {
        "verify the bimodule axioms and the Hochschild 2-cocycle condition for H"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let inst = ctx.instance()?;
        let a = inst.build_algebra().map_err(core_err)?;
        let m = inst.build_bimodule().map_err(core_err)?;
        let h = inst.build_cocycle().map_err(core_err)?;
        let mut check = trb_core::algebra::check_bimodule(&a, &m);
        check.merge(check_two_cocycle(&a, &m, &h).map_err(core_err)?);
        Ok(ctx.report(self.name()).with_check(&check))
    }
}

struct CheckTrb;

impl Command for CheckTrb {
    fn name(&self) -> &'static str {
        "check-trb"
    }
    fn about(&self) -> &'static str {
        "verify the full twisted Rota-Baxter identity for the instance operator"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let trb_ctx = ctx.instance()?.build_trb_context().map_err(core_err)?;
        let check = trb_ctx.validate().map_err(core_err)?;
        Ok(ctx.report(self.name()).with_check(&check))
    }
}

struct CohomologyTrb;

impl Command for CohomologyTrb {
    fn name(&self) -> &'static str {
        "cohomology-trb"
    }
    fn about(&self) -> &'static str {
        "cohomology dimensions of the operator complex up to --nmax"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let trb_ctx = ctx.instance()?.build_trb_context().map_err(core_err)?;
        let dims = trb::cohomology_dims(&trb_ctx, ctx.nmax).map_err(core_err)?;
        Ok(ctx.report(self.name()).with_dims(dims))
    }
}

struct Gauge;

impl Command for Gauge {
    fn name(&self) -> &'static str {
        "gauge"
    }
    fn about(&self) -> &'static str {
        "gauge-transform the operator by the 1-cocycle in --B"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let trb_ctx = ctx.instance()?.build_trb_context().map_err(core_err)?;
        let b = matrix_flag(ctx, ctx.b_file.as_ref(), trb_ctx.dim_m(), trb_ctx.dim_a(), "B")?;
        match trb::gauge_transform(&trb_ctx, &b).map_err(core_err)? {
            Some(new_ctx) => {
                let out = InstanceFile::from_trb_context(&new_ctx);
                let text = out.to_canonical_string().map_err(core_err)?;
                let value = serde_json::from_str(&text)
                    .map_err(|e| CliError::Malformed(e.to_string()))?;
                Ok(ctx.report(self.name()).with_data(value))
            }
            None => Ok(ctx
                .report(self.name())
                .fail()
                .with_note("id + B o T is singular; gauge transform undefined")),
        }
    }
}

struct Shift;

impl Command for Shift {
    fn name(&self) -> &'static str {
        "shift"
    }
    fn about(&self) -> &'static str {
        "shift the twist by the coboundary of the 1-cochain in --h"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let trb_ctx = ctx.instance()?.build_trb_context().map_err(core_err)?;
        let h = matrix_flag(ctx, ctx.h_file.as_ref(), trb_ctx.dim_m(), trb_ctx.dim_a(), "h")?;
        match trb::cocycle_shift(&trb_ctx, &h).map_err(core_err)? {
            Some(new_ctx) => {
                let out = InstanceFile::from_trb_context(&new_ctx);
                let text = out.to_canonical_string().map_err(core_err)?;
                let value = serde_json::from_str(&text)
                    .map_err(|e| CliError::Malformed(e.to_string()))?;
                Ok(ctx.report(self.name()).with_data(value))
            }
            None => Ok(ctx
                .report(self.name())
                .fail()
                .with_note("id - h o T is singular; shifted operator undefined")),
        }
    }
}

struct Nijenhuis;

impl Command for Nijenhuis {
    fn name(&self) -> &'static str {
        "nijenhuis"
    }
    fn about(&self) -> &'static str {
        "check --candidates (or a small grid) for Nijenhuis elements and rigidity"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let trb_ctx = ctx.instance()?.build_trb_context().map_err(core_err)?;
        let da = trb_ctx.dim_a();
        let mut report = ctx.report(self.name());
        let candidates: Vec<Vec<Q>> = match &ctx.candidates {
            Some(path) => {
                let text = ctx.read_file(path)?;
                let raw: Vec<Vec<String>> = serde_json::from_str(&text)
                    .map_err(|e| CliError::Malformed(format!("candidates: {e}")))?;
                raw.iter()
                    .map(|v| v.iter().map(|s| parse_q(s)).collect::<Result<Vec<Q>, _>>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(core_err)?
            }
            None => {
                // integer grid with entries in {-1, 0, 1}
                let mut grid: Vec<Vec<Q>> = vec![vec![]];
                for _ in 0..da {
                    grid = grid
                        .into_iter()
                        .flat_map(|g| {
                            (-1..=1).map(move |v| {
                                let mut g2 = g.clone();
                                g2.push(trb_core::qlinalg::q_int(v));
                                g2
                            })
                        })
                        .collect();
                }
                grid
            }
        };
        let supplied = ctx.candidates.is_some();
        let mut members = Vec::new();
        for (i, a) in candidates.iter().enumerate() {
            if a.len() != da {
                return Err(CliError::Malformed(format!(
                    "candidate {i} has {} entries, expected {da}",
                    a.len()
                )));
            }
            let check = trb::is_nijenhuis_element(&trb_ctx, a).map_err(core_err)?;
            if check.passed() {
                members.push(a.clone());
            } else if supplied {
                report = report.with_check(&check);
            }
        }
        let rigidity = trb::nijenhuis_spans_z1(&trb_ctx, &members).map_err(core_err)?;
        let listed: Vec<Vec<String>> = members
            .iter()
            .map(|a| a.iter().map(format_q).collect())
            .collect();
        Ok(report.with_data(json!({
            "nijenhuis_elements": listed,
            "z1_dim": rigidity.z1_dim,
            "coboundary_span_dim": rigidity.span_dim,
            "coboundaries_span_z1": rigidity.spans,
        })))
    }
}

struct Reynolds;

impl Command for Reynolds {
    fn name(&self) -> &'static str {
        "reynolds"
    }
    fn about(&self) -> &'static str {
        "interpret T as a Reynolds operator (adjoint module, H = -mu) and verify"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let inst = ctx.instance()?;
        let a = inst.build_algebra().map_err(core_err)?;
        let r = inst.build_operator().map_err(core_err)?;
        let trb_ctx = trb::reynolds_context(&a, &r).map_err(core_err)?;
        let check = trb_ctx.validate().map_err(core_err)?;
        Ok(ctx.report(self.name()).with_check(&check))
    }
}

struct McCheck;

impl Command for McCheck {
    fn name(&self) -> &'static str {
        "mc-check"
    }
    fn about(&self) -> &'static str {
        "evaluate the Maurer-Cartan residual of the instance operator"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let trb_ctx = ctx.instance()?.build_trb_context().map_err(core_err)?;
        let res = mc_residual(
            &trb_ctx.algebra,
            &trb_ctx.bimodule,
            &trb_ctx.cocycle,
            &MultiLin::from_matrix(&trb_ctx.operator),
        )
        .map_err(core_err)?;
        let mut report = ctx.report(self.name());
        if !res.is_zero() {
            report = report.fail().with_note("Maurer-Cartan residual is nonzero");
        }
        let agree = res.is_zero() == trb_ctx.is_twisted_rb();
        Ok(report.with_data(json!({
            "mc_residual_zero": res.is_zero(),
            "agrees_with_twisted_rb_check": agree,
        })))
    }
}

struct LinftyAudit;

impl Command for LinftyAudit {
    fn name(&self) -> &'static str {
        "linfty-audit"
    }
    fn about(&self) -> &'static str {
        "sample the higher Jacobi identities J_1..J_5 of the twisted structure"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let trb_ctx = ctx.instance()?.build_trb_context().map_err(core_err)?;
        let structure = twisted_structure(&trb_ctx);
        let mut rng = sampling::rng(ctx.seed);
        let (da, dm) = (trb_ctx.dim_a(), trb_ctx.dim_m());
        let mut report = ctx.report(self.name());
        let mut checked = 0usize;
        let top = ctx.nmax.clamp(1, 5);
        for sample in 0..ctx.samples {
            let n = 1 + sample % top;
            let args: Vec<MultiLin> = (0..n)
                .map(|_| sampling::random_multilin(&mut rng, vec![dm], da, 2))
                .collect();
            let res = linfty_jacobi_residual(&structure, n, &args).map_err(core_err)?;
            if !res.is_zero() {
                report.failures.push(trb_core::Violation {
                    identity: format!("jacobi-{n}"),
                    at: vec![sample],
                    residual: "nonzero".into(),
                });
                report = report.fail();
            }
            checked += 1;
        }
        Ok(report.with_data(json!({ "samples": checked })))
    }
}
