use std::collections::BTreeMap;

use serde_json::{json, Value};

use langparams_core::dualgroup::{
    banal_report, chevalley_steinberg, compare_banal, torus_cocycle_group, ArithContext, LGroupSpec,
};
use langparams_core::exactalg::{cyclotomic_factorization, IntMatrix, IntPoly};
use langparams_core::fingrp::make_field;
use langparams_core::fingrp::{enumerate_group, FqMatrix, GroupKind, GroupSpecFin};
use langparams_core::kostant::{
    kostant_determinant, principal_triple, regular_unipotent_check, PinnedOuter,
};
use langparams_core::moduli::{
    analyze_points, cyclic_cohomology, enumerate_z1, inertial_classes, SemidirectData,
    TameParameterPoint, TwistAut,
};
use langparams_core::rootdata::{
    build_twisted, chi_prime, chi_star, chi_twisted, twisted_coxeter, ChiMethod,
};

use crate::output::{Report, Table};
use crate::{CliError, Command, Opts};

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| invalid(e.to_string()))
}

impl Opts {
    fn type_spec(&self) -> Result<&str, CliError> {
        self.type_spec
            .as_deref()
            .ok_or_else(|| invalid("--type is required"))
    }

    fn q(&self) -> Result<u64, CliError> {
        self.q.ok_or_else(|| invalid("--q is required"))
    }

    fn ell(&self) -> Result<u32, CliError> {
        self.ell.ok_or_else(|| invalid("--ell is required"))
    }

    fn context(&self) -> Result<ArithContext, CliError> {
        let q = self.q()?;
        let p = match self.p {
            Some(p) => p,
            None => ArithContext::from_q(q)?.p(),
        };
        let ctx = ArithContext::new(p, q, self.e, self.f)?;
        if let Some(ell) = self.ell {
            if u64::from(ell) == p {
                return Err(invalid(format!("ell = {ell} must differ from p")));
            }
        }
        Ok(ctx)
    }

    fn group(&self) -> Result<GroupSpecFin, CliError> {
        let label = self
            .group
            .as_deref()
            .ok_or_else(|| invalid("--group is required"))?;
        Ok(GroupSpecFin::parse(label, self.ell()?, self.k)?)
    }
}

/// `"a,b;c,d"` as rows of integers.
fn parse_matrix(s: &str) -> Result<IntMatrix, CliError> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            r.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| invalid(format!("bad matrix entry {x:?}")))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(invalid(format!("matrix {s:?} is not square")));
    }
    Ok(if n == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(&rows)
    })
}

fn entries_string(m: &FqMatrix) -> String {
    m.entries()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn cyclotomic_json(p: &IntPoly) -> Value {
    let (mult, rest) = cyclotomic_factorization(p);
    let m: BTreeMap<String, u32> = mult.into_iter().map(|(n, e)| (n.to_string(), e)).collect();
    json!({ "multiplicities": m, "remainder": rest })
}

pub fn run(cmd: &Command, o: &Opts) -> Result<Report, CliError> {
    match cmd {
        Command::Chi => chi(o),
        Command::ChiStar => chi_star_cmd(o),
        Command::Banal => {
            let spec = LGroupSpec::from_label(o.type_spec()?, o.context()?)?;
            let mut v = to_json(&banal_report(&spec)?)?;
            v["type"] = json!(o.type_spec()?);
            Ok(Report::json(v))
        }
        Command::CompareBanal { bound } => {
            let spec = LGroupSpec::from_label(o.type_spec()?, o.context()?)?;
            let rows = compare_banal(&spec, *bound)?;
            let table = Table {
                header: vec!["ell", "lg_banal_excluded", "g_nonbanal", "agrees"],
                rows: rows
                    .iter()
                    .map(|c| {
                        vec![
                            c.ell.to_string(),
                            c.lg_banal_excluded.to_string(),
                            c.g_nonbanal.to_string(),
                            c.agrees().to_string(),
                        ]
                    })
                    .collect(),
            };
            let json = json!({
                "type": o.type_spec()?,
                "bound": bound,
                "all_agree": rows.iter().all(|c| c.agrees()),
                "comparisons": to_json(&rows)?,
            });
            Ok(Report {
                json,
                table: Some(table),
            })
        }
        Command::CountPoints => count_points(o),
        Command::Enumerate => enumerate(o),
        Command::Tangent => tangent(o),
        Command::Components => components(o),
        Command::TorusCocycles { a_fr, a_s } => {
            let g = torus_cocycle_group(&parse_matrix(a_fr)?, &parse_matrix(a_s)?, o.q()?)?;
            let mut v = to_json(&g)?;
            if let Some(ell) = o.ell {
                v["ell"] = json!(ell);
                v["point_count"] = json!(g.point_count(u64::from(ell)).to_string());
            }
            Ok(Report::json(v))
        }
        Command::Kostant { t } => kostant(o, *t),
        Command::Cohomology {
            invariants,
            sigma,
            fr,
            m,
        } => {
            let inv: Vec<u64> = invariants
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| invalid(format!("bad invariant factor {x:?}")))
                })
                .collect::<Result<_, _>>()?;
            let p = match o.p {
                Some(p) => p,
                None => ArithContext::from_q(o.q()?)?.p(),
            };
            let c = cyclic_cohomology(
                &inv,
                &parse_matrix(sigma)?,
                &parse_matrix(fr)?,
                o.q()?,
                *m,
                p,
            )?;
            let mut v = to_json(&c)?;
            v["invariants"] = json!(inv);
            Ok(Report::json(v))
        }
    }
}

fn chi(o: &Opts) -> Result<Report, CliError> {
    let (d, beta) = build_twisted(o.type_spec()?)?;
    let base = chi_twisted(&d, &beta, ChiMethod::Auto)?;
    let f = usize::try_from(o.f).map_err(|_| invalid("--f too large"))?;
    let chi = base.compose_power(f);
    let h = if chi.is_constant() {
        0
    } else {
        twisted_coxeter(&chi)?
    };
    let cp = chi_prime(&d, &beta)?.compose_power(f);
    Ok(Report::json(json!({
        "type": o.type_spec()?,
        "f": o.f,
        "chi": chi,
        "chi_text": chi.to_string(),
        "cyclotomic": cyclotomic_json(&chi),
        "h": h,
        "chi_prime": cp,
    })))
}

fn chi_star_cmd(o: &Opts) -> Result<Report, CliError> {
    let (d, beta) = build_twisted(o.type_spec()?)?;
    let cs = chi_star(&d, &beta)?;
    let chi = chi_twisted(&d, &beta, ChiMethod::Auto)?;
    let h = if chi.is_constant() {
        0
    } else {
        twisted_coxeter(&chi)?
    };
    Ok(Report::json(json!({
        "type": o.type_spec()?,
        "h": h,
        "chi_star": cs,
        "chi_star_text": cs.to_string(),
    })))
}

fn count_points(o: &Opts) -> Result<Report, CliError> {
    let g = o.group()?;
    let spec = LGroupSpec::from_label(&g.root_label(), ArithContext::from_q(g.q())?)?;
    let formula = chevalley_steinberg(&spec, g.q())?;
    let enumerated = enumerate_group(&g)?.len();
    Ok(Report::json(json!({
        "group": g.label(),
        "ell": g.field().ell(),
        "k": g.field().k(),
        "formula": formula.to_string(),
        "enumerated": enumerated.to_string(),
        "agree": formula == enumerated.into(),
    })))
}

/// Group, action, points and the chi used for the order estimate.
struct Moduli {
    spec: GroupSpecFin,
    sd: SemidirectData,
    ctx: ArithContext,
    chi: IntPoly,
    points: Vec<TameParameterPoint>,
}

fn outer(spec: &GroupSpecFin) -> Result<TwistAut, CliError> {
    if spec.kind() == GroupKind::Sp {
        return Err(invalid("symplectic groups have no outer automorphism"));
    }
    let n = spec.n();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j == n - 1 - i {
                        if i % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    let f = spec.field();
    Ok(TwistAut::new(
        Some(FqMatrix::from_int_rows(f, &rows)),
        true,
        f,
    )?)
}

fn moduli(o: &Opts) -> Result<Moduli, CliError> {
    let spec = o.group()?;
    let ctx = o.context()?;
    let q = ctx.q();
    let elements = enumerate_group(&spec)?;
    let (fr, s) = match o.twist.as_str() {
        "trivial" => (TwistAut::identity(), TwistAut::identity()),
        "fr-outer" => (outer(&spec)?, TwistAut::identity()),
        "s-outer" => (TwistAut::identity(), outer(&spec)?),
        other => return Err(invalid(format!("unknown twist {other:?}"))),
    };
    // order of theta_fr on the group decides whether chi is twisted
    let f = spec.field();
    let fr_trivial = elements.iter().all(|g| &fr.apply(g, f) == g);
    let sd = SemidirectData::new(&spec, &elements, fr, s, q)?;
    let label = if fr_trivial {
        spec.root_label()
    } else {
        format!("{}^2", spec.root_label())
    };
    let lspec = LGroupSpec::from_label(&label, ctx)?;
    let chi = langparams_core::dualgroup::chi_global(&lspec)?;
    let points = enumerate_z1(&spec, &sd, o.max_pairs)?;
    Ok(Moduli {
        spec,
        sd,
        ctx,
        chi,
        points,
    })
}

fn enumerate(o: &Opts) -> Result<Report, CliError> {
    let m = moduli(o)?;
    let list = analyze_points(&m.points, &m.spec, &m.sd, &m.ctx, &m.chi)?;
    let rows = list
        .points
        .iter()
        .map(|r| {
            vec![
                entries_string(&r.point.f0),
                entries_string(&r.point.sigma0),
                r.point.order.to_string(),
                entries_string(&r.point.ss.g),
                r.point.ss.s_power.to_string(),
                entries_string(&r.point.u.g),
                r.point.u.s_power.to_string(),
                r.tangent.dim_tangent.to_string(),
                r.tangent.dim_h0_twist.to_string(),
                r.tangent.unobstructed.to_string(),
                r.bounds.jordan_ok.to_string(),
                r.bounds.unipotent_ok.to_string(),
                r.bounds.estimate_ok.to_string(),
            ]
        })
        .collect();
    let table = Table {
        header: vec![
            "F0",
            "sigma0",
            "order",
            "ss",
            "ss_s_power",
            "u",
            "u_s_power",
            "dim",
            "h0",
            "unobstructed",
            "jordan_ok",
            "unipotent_ok",
            "estimate_ok",
        ],
        rows,
    };
    Ok(Report {
        json: to_json(&list)?,
        table: Some(table),
    })
}

fn tangent(o: &Opts) -> Result<Report, CliError> {
    let m = moduli(o)?;
    let list = analyze_points(&m.points, &m.spec, &m.sd, &m.ctx, &m.chi)?;
    let mut summary: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for r in &list.points {
        *summary
            .entry((r.tangent.dim_tangent, r.tangent.dim_h0_twist))
            .or_default() += 1;
    }
    let rows: Vec<Vec<String>> = summary
        .iter()
        .map(|(&(d, h), &c)| {
            vec![
                d.to_string(),
                h.to_string(),
                (h == 0).to_string(),
                c.to_string(),
            ]
        })
        .collect();
    let json = json!({
        "group": m.spec.label(),
        "q": m.ctx.q(),
        "points": list.points.len(),
        "dim_group": m.spec.dim(),
        "equality_holds_all": list.points.iter().all(|r| r.tangent.equality_holds()),
        "summary": summary
            .iter()
            .map(|(&(d, h), &c)| json!({"dim": d, "h0": h, "unobstructed": h == 0, "count": c}))
            .collect::<Vec<_>>(),
    });
    Ok(Report {
        json,
        table: Some(Table {
            header: vec!["dim", "h0", "unobstructed", "count"],
            rows,
        }),
    })
}

fn components(o: &Opts) -> Result<Report, CliError> {
    let m = moduli(o)?;
    let classes = inertial_classes(&m.points, &m.spec, &m.sd)?;
    let rows = classes
        .iter()
        .map(|c| {
            vec![
                entries_string(&c.sigma_rep.g),
                c.sigma_rep.s_power.to_string(),
                c.beta_label.to_string(),
                c.count.to_string(),
            ]
        })
        .collect();
    let json = json!({
        "group": m.spec.label(),
        "q": m.ctx.q(),
        "approximate": true,
        "points": m.points.len(),
        "classes": to_json(&classes)?,
    });
    Ok(Report {
        json,
        table: Some(Table {
            header: vec!["sigma_ss", "s_power", "beta_label", "count"],
            rows,
        }),
    })
}

fn kostant(o: &Opts, t: i64) -> Result<Report, CliError> {
    let frame = principal_triple(o.type_spec()?)?;
    let beta = match o.twist.as_str() {
        "trivial" => None,
        "outer" => Some(
            PinnedOuter::for_frame(&frame)
                .ok_or_else(|| invalid(format!("{} has no outer automorphism", frame.label())))?,
        ),
        other => return Err(invalid(format!("unknown twist {other:?}"))),
    };
    let report = kostant_determinant(&frame, beta.as_ref(), t)?;
    let mut v = to_json(&report)?;
    if let (Some(ell), Some(q)) = (o.ell, o.q) {
        let field = make_field(ell, o.k)?;
        let r = regular_unipotent_check(&frame, beta.as_ref(), &field, q)?;
        v["regular_unipotent"] = to_json(&r)?;
    }
    Ok(Report::json(v))
}
