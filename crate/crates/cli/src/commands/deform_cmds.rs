//! Commands for truncated deformations, obstructions and the built-in corpus.

use serde_json::json;
use trb_core::corpus;
use trb_core::deform::{
    ns_deformation_residuals, ns_extend, ns_infinitesimal, ns_obstruction,
    rb_deformation_residuals, rb_infinitesimal,
};
use trb_core::instance::bilinear_to_entries;

use super::{core_err, CliError, Command, RunContext};
use crate::report::Report;

pub fn commands() -> Vec<Box<dyn Command>> {
    vec![
        Box::new(DeformRb),
        Box::new(DeformNs),
        Box::new(Obstruction),
        Box::new(Extend),
        Box::new(Corpus),
    ]
}

struct DeformRb;

impl Command for DeformRb {
    fn name(&self) -> &'static str {
        "deform-rb"
    }
    fn about(&self) -> &'static str {
        "validate the truncated operator deformation order by order"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let d = ctx.instance()?.build_rb_deformation().map_err(core_err)?;
        let top = if ctx.order == 0 { d.order } else { ctx.order.min(d.order) };
        let residuals = rb_deformation_residuals(&d);
        let mut report = ctx.report(self.name());
        for (r, res) in residuals.iter().enumerate().skip(1).take(top) {
            if !res.is_zero() {
                report.failures.push(trb_core::Violation {
                    identity: format!("deformation-order-{r}"),
                    at: vec![],
                    residual: "nonzero".into(),
                });
                report = report.fail();
            }
        }
        let (_, cocycle) = rb_infinitesimal(&d).map_err(core_err)?;
        Ok(report.with_data(json!({
            "order": top,
            "infinitesimal_is_cocycle": cocycle,
        })))
    }
}

struct DeformNs;

impl Command for DeformNs {
    fn name(&self) -> &'static str {
        "deform-ns"
    }
    fn about(&self) -> &'static str {
        "validate the truncated NS-algebra deformation order by order"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let d = ctx.instance()?.build_ns_deformation().map_err(core_err)?;
        let top = if ctx.order == 0 { d.order } else { ctx.order.min(d.order) };
        let residuals = ns_deformation_residuals(&d).map_err(core_err)?;
        let mut report = ctx.report(self.name());
        for (r, res) in residuals.iter().enumerate().skip(1).take(top) {
            if !res.is_zero() {
                report.failures.push(trb_core::Violation {
                    identity: format!("deformation-order-{r}"),
                    at: vec![],
                    residual: "nonzero".into(),
                });
                report = report.fail();
            }
        }
        let (_, cocycle) = ns_infinitesimal(&d).map_err(core_err)?;
        Ok(report.with_data(json!({
            "order": top,
            "infinitesimal_is_cocycle": cocycle,
        })))
    }
}

struct Obstruction;

impl Command for Obstruction {
    fn name(&self) -> &'static str {
        "obstruction"
    }
    fn about(&self) -> &'static str {
        "compute the obstruction cochain to extending one order further"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let d = ctx.instance()?.build_ns_deformation().map_err(core_err)?;
        let (ob, is_cocycle) = ns_obstruction(&d).map_err(core_err)?;
        let extensible = ns_extend(&d).map_err(core_err)?.is_some();
        let mut report = ctx.report(self.name());
        if !extensible {
            report = report
                .fail()
                .with_note("obstruction class is nonzero; no extension exists");
        }
        Ok(report.with_data(json!({
            "order": d.order,
            "obstruction_is_zero": ob.is_zero(),
            "obstruction_is_cocycle": is_cocycle,
            "extensible": extensible,
        })))
    }
}

struct Extend;

impl Command for Extend {
    fn name(&self) -> &'static str {
        "extend"
    }
    fn about(&self) -> &'static str {
        "solve for a next-order term of the NS-algebra deformation"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let d = ctx.instance()?.build_ns_deformation().map_err(core_err)?;
        match ns_extend(&d).map_err(core_err)? {
            Some(next) => {
                let comps: Vec<Vec<_>> = (1..=3)
                    .map(|r| bilinear_to_entries(&next.component(r)))
                    .collect();
                Ok(ctx.report(self.name()).with_data(json!({
                    "order": d.order + 1,
                    "prec_entries": comps[0],
                    "succ_entries": comps[1],
                    "vee_entries": comps[2],
                })))
            }
            None => Ok(ctx
                .report(self.name())
                .fail()
                .with_note("obstruction class is nonzero; no extension exists")),
        }
    }
}

struct Corpus;

impl Command for Corpus {
    fn name(&self) -> &'static str {
        "corpus"
    }
    fn about(&self) -> &'static str {
        "list the built-in corpus instances with digests"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let mut listing = Vec::new();
        for entry in corpus::corpus() {
            let digest = entry.instance.digest().map_err(core_err)?;
            listing.push(json!({
                "name": entry.name,
                "description": entry.description,
                "digest": digest,
            }));
        }
        Ok(ctx
            .report(self.name())
            .with_data(serde_json::Value::Array(listing)))
    }
}
