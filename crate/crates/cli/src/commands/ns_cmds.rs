//! Commands for NS-algebras: axiom checks, cohomology, the associated
//! star product, and the construction from a twisted Rota-Baxter context.

use serde_json::json;
use trb_core::instance::{bilinear_to_entries, InstanceFile};
use trb_core::nsop::{check_ns, ns_cohomology_dims, ns_to_multiplication, theta, trb_to_ns};

use super::{core_err, CliError, Command, RunContext};
use crate::report::Report;

pub fn commands() -> Vec<Box<dyn Command>> {
    vec![
        Box::new(CheckNs),
        Box::new(CohomologyNs),
        Box::new(Theta),
        Box::new(TrbToNs),
    ]
}

struct CheckNs;

impl Command for CheckNs {
    fn name(&self) -> &'static str {
        "check-ns"
    }
    fn about(&self) -> &'static str {
        "verify the NS-algebra axioms on all basis triples"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let ns = ctx.instance()?.build_ns().map_err(core_err)?;
        let mut report = ctx.report(self.name()).with_check(&check_ns(&ns));
        if trb_core::nsop::is_dendriform_element(&ns_to_multiplication(&ns)) {
            report = report.with_note("the three products form a dendriform algebra");
        }
        Ok(report)
    }
}

struct CohomologyNs;

impl Command for CohomologyNs {
    fn name(&self) -> &'static str {
        "cohomology-ns"
    }
    fn about(&self) -> &'static str {
        "cohomology dimensions of the tagged complex up to --nmax"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let ns = ctx.instance()?.build_ns().map_err(core_err)?;
        let dims = ns_cohomology_dims(&ns, ctx.nmax).map_err(core_err)?;
        Ok(ctx.report(self.name()).with_dims(dims))
    }
}

struct Theta;

impl Command for Theta {
    fn name(&self) -> &'static str {
        "theta"
    }
    fn about(&self) -> &'static str {
        "collapse the three products to the associated star product"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let ns = ctx.instance()?.build_ns().map_err(core_err)?;
        let star = theta(&ns_to_multiplication(&ns));
        let star_alg = ns.star_algebra();
        let assoc = trb_core::algebra::check_algebra(&star_alg);
        let mut report = ctx.report(self.name()).with_data(json!({
            "star_entries": bilinear_to_entries(&star),
            "star_is_associative": assoc.passed(),
        }));
        if !assoc.passed() {
            report = report.fail().with_check(&assoc);
        }
        Ok(report)
    }
}

struct TrbToNs;

impl Command for TrbToNs {
    fn name(&self) -> &'static str {
        "trb-to-ns"
    }
    fn about(&self) -> &'static str {
        "derive the NS-algebra on M induced by the operator and print it"
    }
    fn run(&self, ctx: &RunContext) -> Result<Report, CliError> {
        let trb_ctx = ctx.instance()?.build_trb_context().map_err(core_err)?;
        let ns = trb_to_ns(&trb_ctx);
        let check = check_ns(&ns);
        let out = InstanceFile::empty().with_ns(&ns);
        let text = out.to_canonical_string().map_err(core_err)?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::Malformed(e.to_string()))?;
        Ok(ctx.report(self.name()).with_check(&check).with_data(value))
    }
}
