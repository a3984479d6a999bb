use std::path::Path;

use grcat::braided::{em_check, hexagon_witness, make_braided};
use grcat::cohomology::{cocycles, cohomology_group, Cochain};
use grcat::extensions::{compare_with_reduction, enumerate_extensions, identify, AbstractKernel};
use grcat::functors::{are_homotopic, classify, functor_automorphisms, obstruction, GrFunctorData};
use grcat::linalg::IntMatrix;
use grcat::skeletal::{make_gr_type, reduce_strict, strictify, verify_strict, Sampling, StrictGrCat};
use grcat::{AbelianHom, AutData, Caps, Error, FiniteAbelianGroup, FiniteGroup, GroupHom};
use serde_json::{json, Value};

use crate::files::{
    entries_of, group_from_file, load, load_grtype, load_module, parse_entries, resolve_grtype, resolve_group,
    FunctorFile, GroupFile, KernelFile,
};
use crate::{CliError, Outcome};

fn element_orders(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order()).map(|a| g.element_order(a)).collect()
}

pub fn group_check(path: &Path) -> Result<Outcome, CliError> {
    let file = load::<GroupFile>(path)?;
    let g = group_from_file(&file)?;
    Ok(Outcome::answer(json!({
        "name": file.value.name,
        "order": g.order(),
        "valid": true,
        "abelian": g.is_abelian(),
        "cyclic": g.is_cyclic(),
        "identification": identify(&g),
        "element_orders": element_orders(&g),
        "center": g.center(),
    })))
}

pub fn group_aut(path: &Path, caps: &Caps) -> Result<Outcome, CliError> {
    let file = load::<GroupFile>(path)?;
    let g = group_from_file(&file)?;
    let aut = AutData::compute(&g, caps).map_err(|e| file.error("table", e))?;
    Ok(Outcome::answer(json!({
        "name": file.value.name,
        "order": g.order(),
        "center": g.center(),
        "aut_order": aut.aut.order(),
        "inner_order": aut.inner.len(),
        "out_order": aut.out.order(),
        "automorphisms": aut.maps,
        "inner": aut.inner,
        "out_class": aut.out_class,
        "out_representatives": aut.out_reps,
        "aut_table": aut.aut.rows(),
        "out_table": aut.out.rows(),
    })))
}

fn module_json(m: &grcat::PiModule) -> Value {
    let action: Vec<Vec<Vec<i64>>> = (0..m.pi().order()).map(|x| m.action_matrix(x).to_rows()).collect();
    json!({ "coefficients": m.coeff().factors(), "action": action })
}

pub fn cohomology(path: &Path, degree: usize, caps: &Caps) -> Result<Outcome, CliError> {
    let (m, name) = load_module(path)?;
    let h = cohomology_group(&m, degree, caps).map_err(|e| CliError::input(path, None, e))?;
    let reps: Vec<Value> = h
        .representatives()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let coords: Vec<i64> = (0..h.invariant_factors().len()).map(|j| i64::from(i == j)).collect();
            json!({ "class": coords, "cocycle": entries_of(c) })
        })
        .collect();
    Ok(Outcome::answer(json!({
        "group": name,
        "module": module_json(&m),
        "degree": degree,
        "invariant_factors": h.invariant_factors(),
        "order": h.order(),
        "representatives": reps,
    })))
}

struct FunctorInput {
    source: grcat::skeletal::GrType,
    target: grcat::skeletal::GrType,
    phi: GroupHom,
    f: AbelianHom,
    g: Option<Cochain>,
}

fn load_functor(path: &Path) -> Result<FunctorInput, CliError> {
    let file = load::<FunctorFile>(path)?;
    let s = resolve_grtype(&file, &file.value.source)?;
    let t = resolve_grtype(&file, &file.value.target)?;
    let source = make_gr_type(s.module.clone(), s.h.clone()).map_err(|e| s.file.error("h", e))?;
    let target = make_gr_type(t.module.clone(), t.h.clone()).map_err(|e| t.file.error("h", e))?;
    let phi = GroupHom::new(source.pi().clone(), target.pi().clone(), file.value.phi.clone())
        .map_err(|e| file.error("phi", e))?;
    let (rs, rt) = (source.coeff().rank(), target.coeff().rank());
    if file.value.f.len() != rt || file.value.f.iter().any(|r| r.len() != rs) {
        return Err(file.error("f", format!("matrix must be {rt}x{rs}")));
    }
    let f = AbelianHom::new(source.coeff().clone(), target.coeff().clone(), IntMatrix::from_rows(&file.value.f))
        .map_err(|e| file.error("f", e))?;
    let pulled = target.module().restrict(&phi).map_err(|e| file.error("phi", e))?;
    let g = match &file.value.g {
        Some(entries) => Some(parse_entries(&file, "g", &pulled, 2, entries)?),
        None => None,
    };
    obstruction(&phi, &f, &source, &target).map_err(|e| file.error("f", e))?;
    Ok(FunctorInput { source, target, phi, f, g })
}

pub fn functor_obstruction(path: &Path, caps: &Caps) -> Result<Outcome, CliError> {
    let input = load_functor(path)?;
    let (m, k) = obstruction(&input.phi, &input.f, &input.source, &input.target).map_err(|e| CliError::input(path, None, e))?;
    let h3 = cohomology_group(&m, 3, caps).map_err(|e| CliError::input(path, None, e))?;
    let class = h3.project(&k).map_err(|e| CliError::input(path, None, e))?;
    let vanishes = class.iter().all(|&c| c == 0);
    let report = json!({
        "phi": input.phi.map(),
        "f": input.f.matrix().to_rows(),
        "pulled_back_module": module_json(&m),
        "k": entries_of(&k),
        "h3_invariant_factors": h3.invariant_factors(),
        "class": class,
        "vanishes": vanishes,
    });
    Ok(if vanishes { Outcome::answer(report) } else { Outcome::negative(report) })
}

pub fn functor_classify(path: &Path, caps: &Caps) -> Result<Outcome, CliError> {
    let input = load_functor(path)?;
    let reps = match classify(&input.phi, &input.f, &input.source, &input.target, caps) {
        Ok(reps) => reps,
        Err(Error::ObstructionNonzero { class }) => {
            return Ok(Outcome::negative(json!({ "realizable": false, "obstruction_class": class })));
        }
        Err(e) => return Err(CliError::input(path, None, e)),
    };
    let m = reps[0].module();
    let h2 = cohomology_group(&m, 2, caps).map_err(|e| CliError::input(path, None, e))?;
    let automorphisms = functor_automorphisms(&reps[0], caps).map_err(|e| CliError::input(path, None, e))?;
    let mut report = json!({
        "realizable": true,
        "h2_invariant_factors": h2.invariant_factors(),
        "count": reps.len(),
        "representatives": reps.iter().map(|r| entries_of(r.g())).collect::<Vec<_>>(),
        "automorphisms_per_functor": automorphisms.len(),
    });
    if let Some(g) = input.g {
        let candidate = GrFunctorData::new(input.source.clone(), input.target.clone(), input.phi.clone(), input.f.clone(), g)
            .map_err(|e| CliError::input(path, None, e))?;
        let is_functor = grcat::functors::is_gr_functor(&candidate);
        let mut homotopic_to = Value::Null;
        if is_functor {
            for (i, r) in reps.iter().enumerate() {
                if are_homotopic(r, &candidate, caps).map_err(|e| CliError::input(path, None, e))?.is_some() {
                    homotopic_to = json!(i);
                    break;
                }
            }
        }
        report["supplied_g"] = json!({ "is_functor": is_functor, "homotopic_to": homotopic_to });
    }
    Ok(Outcome::answer(report))
}

fn load_kernel(path: &Path, caps: &Caps) -> Result<(AbstractKernel, String, String), CliError> {
    let file = load::<KernelFile>(path)?;
    let (pi, pi_name) = resolve_group(&file, "pi", &file.value.pi)?;
    let (g, g_name) = resolve_group(&file, "g", &file.value.g)?;
    let kernel = AbstractKernel::from_indices(pi, g, file.value.psi.clone(), caps).map_err(|e| file.error("psi", e))?;
    Ok((kernel, pi_name, g_name))
}

pub fn kernel_obstruction(path: &Path, caps: &Caps) -> Result<Outcome, CliError> {
    let (kernel, pi_name, g_name) = load_kernel(path, caps)?;
    let obs = grcat::extensions::kernel_obstruction(&kernel, caps).map_err(|e| CliError::input(path, None, e))?;
    let comparison = compare_with_reduction(&kernel, caps).map_err(|e| CliError::input(path, None, e))?;
    let vanishes = obs.vanishes();
    let report = json!({
        "pi": pi_name,
        "g": g_name,
        "psi": kernel.psi().map(),
        "lifts": (0..kernel.pi().order()).map(|x| kernel.lift(x).to_vec()).collect::<Vec<_>>(),
        "f": obs.f,
        "center": kernel.g().center(),
        "center_coefficients": obs.module.coeff().factors(),
        "k": entries_of(&obs.k),
        "h3_invariant_factors": obs.h3.invariant_factors(),
        "class": obs.class,
        "verdict": if vanishes { "class = 0, extensions exist" } else { "class ≠ 0, no extensions" },
        "has_extensions": vanishes,
        "reduction_comparison": comparison,
    });
    Ok(if vanishes { Outcome::answer(report) } else { Outcome::negative(report) })
}

fn group_file_json(name: &str, b: &FiniteGroup, g: &FiniteGroup, pi: &FiniteGroup) -> Value {
    let n = g.order();
    let elements: Vec<String> = (0..b.order()).map(|e| format!("({},{})", g.name(e % n), pi.name(e / n))).collect();
    json!({ "name": name, "elements": elements, "table": b.rows() })
}

pub fn ext_enumerate(path: &Path, caps: &Caps) -> Result<Outcome, CliError> {
    let (kernel, pi_name, g_name) = load_kernel(path, caps)?;
    let (obs, exts) = enumerate_extensions(&kernel, caps).map_err(|e| CliError::input(path, None, e))?;
    let h2 = cohomology_group(&obs.module, 2, caps).map_err(|e| CliError::input(path, None, e))?;
    let extensions: Vec<Value> = exts
        .iter()
        .enumerate()
        .map(|(i, e)| {
            json!({
                "class": e.class,
                "profile": e.profile,
                "group": group_file_json(&format!("B{i}"), e.extension.b(), kernel.g(), kernel.pi()),
                "inclusion": e.extension.i().map(),
                "projection": e.extension.p().map(),
                "factor_set": e.factor_set,
            })
        })
        .collect();
    let report = json!({
        "pi": pi_name,
        "g": g_name,
        "psi": kernel.psi().map(),
        "obstruction_class": obs.class,
        "h2_invariant_factors": h2.invariant_factors(),
        "count": extensions.len(),
        "extensions": extensions,
    });
    Ok(if exts.is_empty() { Outcome::negative(report) } else { Outcome::answer(report) })
}

pub fn braided_emcheck(m: &[i64], n: &[i64], caps: &Caps) -> Result<Outcome, CliError> {
    let parse = |flag: &str, v: &[i64]| {
        FiniteAbelianGroup::new(v.to_vec()).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
    };
    let (gm, gn) = (parse("m", m)?, parse("n", n)?);
    match em_check(&gm, &gn, caps) {
        Ok(report) => Ok(Outcome::answer(serde_json::to_value(report).expect("serializable"))),
        Err(Error::MismatchFound(msg)) => Ok(Outcome::negative(json!({ "isomorphism": false, "mismatch": msg }))),
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

pub fn grtype_check(path: &Path) -> Result<Outcome, CliError> {
    let t = load_grtype(path)?;
    let base = make_gr_type(t.module.clone(), t.h.clone()).map_err(|e| t.file.error("h", e))?;
    let mut report = json!({
        "group": t.name,
        "module": module_json(&t.module),
        "pentagon": true,
    });
    if let Some(eta) = t.eta {
        if let Some((which, [x, y, z])) = hexagon_witness(&base, &eta) {
            return Err(t.file.error("eta", format!("hexagon fails at ({x}, {y}, {z}) (identity {})", which + 1)));
        }
        let braided = make_braided(t.module.clone(), t.h.clone(), eta).map_err(|e| t.file.error("eta", e))?;
        report["hexagons"] = json!(true);
        report["symmetric"] = json!(braided.is_symmetric());
    }
    Ok(Outcome::answer(report))
}

pub fn strictify_cmd(path: &Path, realization: &Path, caps: &Caps) -> Result<Outcome, CliError> {
    let t = load_grtype(path)?;
    let s = make_gr_type(t.module.clone(), t.h.clone()).map_err(|e| t.file.error("h", e))?;
    let (kernel, _, g_name) = load_kernel(realization, caps)?;
    if !kernel.pi().same_table(s.pi()) {
        return Err(CliError::input(realization, None, "pi: differs from the group of the type"));
    }
    let result = match strictify(&s, kernel.g(), kernel.psi(), caps) {
        Ok(r) => r,
        Err(Error::RealizationMismatch(msg)) => {
            return Ok(Outcome::negative(json!({ "realized": false, "reason": msg })));
        }
        Err(e) => return Err(CliError::input(realization, None, e)),
    };
    let cat = &result.category;
    let strict = verify_strict(cat, Sampling::Bounded { max: 200_000, seed: 7 }).is_ok();
    let red = reduce_strict(cat).map_err(|e| CliError::input(realization, None, e))?;
    let objects: Vec<[usize; 2]> = (0..cat.objects().order()).map(|o| {
        let (x, a) = cat.pair(o);
        [x, a]
    }).collect();
    let eq = &result.equivalence;
    Ok(Outcome::answer(json!({
        "realized": true,
        "g": g_name,
        "psi": kernel.psi().map(),
        "objects": objects,
        "arrows": cat.all_arrows().len(),
        "strict": strict,
        "sticks": red.sticks(),
        "pi1": red.pi1().factors(),
        "reduced_module": module_json(result.reduced.module()),
        "reduced_h": entries_of(result.reduced.h()),
        "theta": eq.f().matrix().to_rows(),
        "g_cochain": entries_of(eq.g()),
        "equivalence_is_functor": grcat::functors::is_gr_functor(eq),
        "automorphisms_of_equivalence": cocycles(&eq.module(), 1, caps).map(|z| z.len()).unwrap_or(0),
    })))
}
