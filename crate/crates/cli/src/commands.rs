use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use foamcalc_core::corpus::{self, CorpusWeb};
use foamcalc_core::foam::{glue, FoamWithBoundary, PreFoam, WebMatching};
use foamcalc_core::homalg::{e1_page, mask_label, CubeComplex, DotAlgebra, DotKind, F2Matrix};
use foamcalc_core::index::{format_rational, index_report, parse_rational, IndexInput};
use foamcalc_core::jflat;
use foamcalc_core::planar::{check_conjecture, reduce_with, RotationWeb, Strategy};
use foamcalc_core::suites::{self, SuiteReport};
use foamcalc_core::web::{self, EtaFlow};

use crate::args::*;
use crate::io::{self, Input};
use crate::output::Report;

fn bit(b: bool) -> u8 {
    u8::from(b)
}

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Web(c) => web_cmd(c),
        Command::Planar(c) => planar_cmd(c),
        Command::Foam(c) => foam_cmd(c),
        Command::Jflat(c) => jflat_cmd(c),
        Command::Index(a) => index_cmd(a),
        Command::Cube(c) => cube_cmd(c),
        Command::Algebra(c) => algebra_cmd(c),
        Command::Suite(a) => suite_cmd(a),
        Command::Corpus(c) => corpus_cmd(c),
    }
}

fn load(r: &mut Report, p: &Path) -> Result<Input> {
    let i = io::read(p)?;
    r.input(&i);
    Ok(i)
}

fn web_cmd(c: &WebCmd) -> Result<Report> {
    let (name, path) = match c {
        WebCmd::Tait(a) => ("web tait", &a.file),
        WebCmd::Orbits(a) => ("web orbits", &a.file),
        WebCmd::Bridges(a) => ("web bridges", &a.file),
        WebCmd::TwoFactors(a) => ("web two-factors", &a.file),
        WebCmd::O2(a) => ("web o2", &a.file),
        WebCmd::Eta { file, .. } => ("web eta", file),
        WebCmd::Reduce(a) => return reduce_cmd("web reduce", a),
    };
    let mut r = Report::new(name);
    let input = load(&mut r, path)?;
    let w = io::web(&input)?;
    match c {
        WebCmd::Tait(_) => {
            let n = web::tait_count(&w)?;
            r.value(n, json!({ "tait_count": n.to_string() }));
        }
        WebCmd::Orbits(_) => {
            let n = web::tait_orbit_count(&w)?;
            r.value(n, json!({ "orbit_count": n.to_string() }));
        }
        WebCmd::Bridges(_) => {
            let b = web::find_bridges(&w)?;
            for e in &b {
                r.line(e.clone());
            }
            r.value(b.len(), json!({ "bridges": b }));
        }
        WebCmd::TwoFactors(_) => {
            let fs = web::two_factors(&w)?;
            for f in &fs {
                let edges: Vec<&str> = f.edges.iter().map(String::as_str).collect();
                let lens: Vec<String> = f.cycle_lengths.iter().map(ToString::to_string).collect();
                r.line(format!(
                    "{}  cycles {}  {}",
                    edges.join(" "),
                    lens.join(","),
                    if f.is_even() { "even" } else { "odd" }
                ));
            }
            r.value(fs.len(), json!({ "two_factors": fs }));
        }
        WebCmd::O2(_) => {
            let fs = web::two_factors(&w)?;
            let even = fs.iter().find(|f| f.is_even());
            if let Some(f) = even {
                r.line(format!(
                    "even 2-factor: {}",
                    f.edges.iter().cloned().collect::<Vec<_>>().join(" ")
                ));
            }
            let exists = web::o2_coloring_exists(&w)?;
            r.value(
                bit(exists),
                json!({ "o2_coloring_exists": exists, "two_factors": fs.len() }),
            );
        }
        WebCmd::Eta { flow, edges, .. } => {
            let f = match flow {
                Some(p) => {
                    let fi = load(&mut r, p)?;
                    io::parse::<EtaFlow>(&fi)?
                }
                None => EtaFlow::from_edges(edges.iter().map(String::as_str)),
            };
            let n = web::eta_type2_count(&w, &f)?;
            r.value(n, json!({ "type2_count": n, "even": n % 2 == 0 }));
        }
        WebCmd::Reduce(_) => unreachable!(),
    }
    Ok(r)
}

fn strategy(seed: Option<u64>) -> Strategy {
    seed.map_or(Strategy::Priority, |seed| Strategy::Random { seed })
}

fn reduce_cmd(name: &str, a: &ReduceArgs) -> Result<Report> {
    let mut r = Report::new(name);
    let input = load(&mut r, &a.file)?;
    let rw = io::rotation_web(&input)?;
    let mut trace = Vec::new();
    let res = reduce_with(&rw, strategy(a.seed), a.trace.then_some(&mut trace))?;
    r.lines.extend(trace.iter().cloned());
    match res.value() {
        Some(v) => r.value(v, json!({ "dimension": v.to_string(), "trace": trace })),
        None => {
            r.line(format!("resolved part {}", res.resolved));
            for (w, m) in &res.residuals {
                r.line(format!(
                    "stuck web with {} vertices, multiplicity {m}",
                    w.web.vertex_count()
                ));
            }
            r.value(
                "stuck",
                json!({
                    "dimension": null,
                    "resolved": res.resolved.to_string(),
                    "residuals": res.residuals.iter().map(|(w, m)| json!({"web": w, "multiplicity": m.to_string()})).collect::<Vec<_>>(),
                    "trace": trace,
                }),
            );
        }
    }
    Ok(r)
}

fn planar_cmd(c: &PlanarCmd) -> Result<Report> {
    match c {
        PlanarCmd::Reduce(a) => reduce_cmd("planar reduce", a),
        PlanarCmd::Faces(a) => {
            let mut r = Report::new("planar faces");
            let input = load(&mut r, &a.file)?;
            let rw = io::rotation_web(&input)?;
            let faces = rw.faces()?;
            let genera = rw.genera()?;
            for f in &faces {
                let walk: Vec<String> = f.iter().map(|(e, k)| format!("{e}.{k}")).collect();
                r.line(walk.join(" "));
            }
            r.line(format!("component genera: {genera:?}"));
            let walks: Vec<Vec<String>> = faces
                .iter()
                .map(|f| f.iter().map(|(e, k)| format!("{e}.{k}")).collect())
                .collect();
            r.value(
                faces.len(),
                json!({ "faces": walks, "genera": genera, "planar": genera.iter().all(|&g| g == 0) }),
            );
            Ok(r)
        }
        PlanarCmd::Conjecture(a) => {
            let mut r = Report::new("planar conjecture");
            let input = load(&mut r, &a.file)?;
            let rw = io::rotation_web(&input)?;
            let mut trace = Vec::new();
            let res = reduce_with(&rw, strategy(a.seed), a.trace.then_some(&mut trace))?;
            let c = check_conjecture(&rw)?;
            r.lines.extend(trace.iter().cloned());
            let reduced = res.value().map(ToString::to_string);
            let agree = reduced.as_ref().map(|v| *v == c.tait.to_string());
            r.line(format!("reduced: {}", reduced.as_deref().unwrap_or("stuck")));
            r.line(format!("tait: {}", c.tait));
            r.ok = agree != Some(false);
            let shown = match agree {
                Some(a) => bit(a).to_string(),
                None => "n/a".into(),
            };
            r.value(
                shown,
                json!({ "reduced": reduced, "tait": c.tait.to_string(), "agree": agree, "trace": trace }),
            );
            Ok(r)
        }
    }
}

fn foam_cmd(c: &FoamCmd) -> Result<Report> {
    match c {
        FoamCmd::Validate(a) => {
            let mut r = Report::new("foam validate");
            let input = load(&mut r, &a.file)?;
            let v = if io::is_fragment(&input)? {
                io::fragment(&input)?.validate()
            } else {
                io::parse::<PreFoam>(&input)?.validate()
            };
            for x in &v {
                r.line(x.to_string());
            }
            r.ok = v.is_empty();
            let list: Vec<Value> = v
                .iter()
                .map(|x| json!({"cell": x.cell, "problem": x.problem}))
                .collect();
            r.value(v.len(), json!({ "violations": list }));
            Ok(r)
        }
        FoamCmd::Euler(a) => {
            let mut r = Report::new("foam euler");
            let input = load(&mut r, &a.file)?;
            let chi = if io::is_fragment(&input)? {
                io::fragment(&input)?.euler_characteristic()
            } else {
                io::parse::<PreFoam>(&input)?.euler_characteristic()
            };
            r.value(chi, json!({ "euler_characteristic": chi }));
            Ok(r)
        }
        FoamCmd::Seams(a) => {
            let mut r = Report::new("foam seams");
            let input = load(&mut r, &a.file)?;
            let f = if io::is_fragment(&input)? {
                io::fragment(&input)?.foam
            } else {
                io::parse::<PreFoam>(&input)?
            };
            let g = f.seam_graph();
            for (e, a, b) in &g.edges {
                r.line(format!("{e}: {a} - {b}"));
            }
            for c in &f.seam_circles {
                r.line(format!(
                    "circle {} monodromy {}",
                    c.id,
                    serde_json::to_value(c.monodromy)?.as_str().unwrap_or("?")
                ));
            }
            r.line(format!(
                "tetrahedral points {}, seam edges {}, seam circles {}",
                g.vertices.len(),
                g.edges.len(),
                f.seam_circles.len()
            ));
            r.value(
                bit(g.bipartite),
                json!({ "seam_graph": g, "seam_circles": f.seam_circles }),
            );
            Ok(r)
        }
        FoamCmd::Glue { a, b, matching, output } => {
            let mut r = Report::new("foam glue");
            let fa = io::fragment(&load(&mut r, a)?)?;
            let fb = io::fragment(&load(&mut r, b)?)?;
            let m = match matching {
                Some(p) => io::parse::<WebMatching>(&load(&mut r, p)?)?,
                None => WebMatching::identity(),
            };
            let g = glue(&fa, &fb, &m)?;
            let chi = g.euler_characteristic();
            match output {
                Some(p) => {
                    fs::write(p, io::canonical(&g)).with_context(|| format!("cannot write {}", p.display()))?;
                    r.line(format!("wrote {}", p.display()));
                    r.value(chi, json!({ "euler_characteristic": chi, "foam": g }));
                }
                None => {
                    r.line(io::canonical(&g).trim_end().to_string());
                    r.value(chi, json!({ "euler_characteristic": chi, "foam": g }));
                }
            }
            Ok(r)
        }
    }
}

fn fragments_in(r: &mut Report, dir: &Path) -> Result<Vec<FoamWithBoundary>> {
    let files = io::json_files(dir)?;
    if files.is_empty() {
        bail!("no .json fragments in {}", dir.display());
    }
    files.iter().map(|p| io::fragment(&load(r, p)?)).collect()
}

fn jflat_cmd(c: &JflatCmd) -> Result<Report> {
    match c {
        JflatCmd::Eval {
            file,
            trace,
            all_choices,
        } => {
            let mut r = Report::new("jflat eval");
            let f = io::closed_foam(&load(&mut r, file)?)?;
            let t = jflat::evaluate_traced(&f)?;
            if *trace {
                for s in &t.steps {
                    let rule = serde_json::to_value(s.rule)?;
                    r.line(format!(
                        "{} {} ({} terms)",
                        rule.as_str().unwrap_or("?"),
                        s.cells.join(" "),
                        s.terms
                    ));
                }
            }
            let mut result = json!({ "value": bit(t.value), "trace": t });
            if *all_choices {
                let w = jflat::well_definedness_report(&f)?;
                r.line(format!(
                    "matchings {}, cancellation orders {}, cut orders {}, runs {}, values {:?}",
                    w.matchings, w.cancel_sequences, w.cut_orders, w.runs, w.values
                ));
                r.ok = w.is_single_valued();
                result["all_choices"] = serde_json::to_value(&w)?;
            }
            r.value(bit(t.value), result);
            Ok(r)
        }
        JflatCmd::Rank { gens, cogens, matching } => {
            let mut r = Report::new("jflat rank");
            let g = fragments_in(&mut r, gens)?;
            let c = fragments_in(&mut r, cogens)?;
            let m = match matching {
                Some(p) => io::parse::<WebMatching>(&load(&mut r, p)?)?,
                None => WebMatching::identity(),
            };
            let p = jflat::pairing_rank(&g, &c, &m)?;
            for row in &p.matrix {
                r.line(row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
            r.value(p.rank, serde_json::to_value(&p)?);
            Ok(r)
        }
        JflatCmd::Welldef(a) => {
            let mut r = Report::new("jflat welldef");
            let f = io::closed_foam(&load(&mut r, &a.file)?)?;
            let w = jflat::well_definedness_report(&f)?;
            r.line(format!("matchings {}", w.matchings));
            r.line(format!("cancellation orders {}", w.cancel_sequences));
            r.line(format!("cut orders {}", w.cut_orders));
            r.line(format!("runs {}", w.runs));
            r.ok = w.is_single_valued();
            let shown = w.values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            r.value(shown, serde_json::to_value(&w)?);
            Ok(r)
        }
    }
}

fn index_cmd(a: &IndexArgs) -> Result<Report> {
    let mut r = Report::new("index");
    let i = IndexInput {
        kappa: parse_rational(&a.kappa)?,
        b1: a.b1,
        bplus: a.bplus,
        chi: a.chi,
        self_int: parse_rational(&a.selfint)?,
        tau: a.tau,
        dots: a.dots,
    };
    let rep = index_report(&i)?;
    let yes = |b: bool| if b { "yes" } else { "no" };
    r.line(format!("integral: {}", yes(rep.integral)));
    r.line(format!("kappa admissible: {}", yes(rep.kappa_admissible)));
    r.line(format!(
        "minimum dots for a non-zero evaluation: {}",
        format_rational(rep.min_dots)
    ));
    if let (Some(c), Some(s)) = (rep.cut_down, rep.dots_sufficient) {
        r.line(format!("dimension after cutting down by dots: {}", format_rational(c)));
        r.line(format!("dots sufficient: {}", yes(s)));
    }
    r.value(format_rational(rep.dimension), json!({ "input": i, "report": rep }));
    Ok(r)
}

fn parse_subset(s: &str, n: u32) -> Result<u32> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}');
    if t.is_empty() || t == "0" {
        return Ok(0);
    }
    let mut m = 0u32;
    for part in t.split(',') {
        let i: u32 = part.trim().parse().with_context(|| format!("bad subset {s:?}"))?;
        if i == 0 || i > n {
            bail!("subset {s:?} has element {i} outside 1..{n}");
        }
        m |= 1 << (i - 1);
    }
    Ok(m)
}

fn cube_from(r: &mut Report, a: &CubeArgs) -> Result<CubeComplex> {
    let mut maps = BTreeMap::new();
    let mut size = None;
    for spec in &a.maps {
        let (sub, file) = spec
            .split_once('=')
            .with_context(|| format!("expected SUBSET=FILE, got {spec:?}"))?;
        let mask = parse_subset(sub, a.n)?;
        let input = load(r, Path::new(file))?;
        let m = F2Matrix::from_text(&input.text).with_context(|| file.to_string())?;
        size.get_or_insert(m.rows());
        if maps.insert(mask, m).is_some() {
            bail!("subset {} given twice", mask_label(mask));
        }
    }
    Ok(CubeComplex::new(a.n, size.unwrap_or(0), maps)?)
}

fn cube_cmd(c: &CubeCmd) -> Result<Report> {
    match c {
        CubeCmd::Check(a) => {
            let mut r = Report::new("cube check");
            let q = cube_from(&mut r, a)?;
            let v = q.square_violation();
            if let Some((x, y)) = v {
                r.line(format!(
                    "D² has a non-zero component from {} to {}",
                    mask_label(y),
                    mask_label(x)
                ));
            }
            r.ok = v.is_none();
            let viol = v.map(|(x, y)| json!({"a": mask_label(x), "b": mask_label(y)}));
            r.value(
                bit(v.is_none()),
                json!({ "square_zero": v.is_none(), "violation": viol, "total_dim": q.total_dim() }),
            );
            Ok(r)
        }
        CubeCmd::Homology(a) => {
            let mut r = Report::new("cube homology");
            let q = cube_from(&mut r, a)?;
            let h = q.homology_dim()?;
            r.value(h, json!({ "homology_dim": h, "total_dim": q.total_dim() }));
            Ok(r)
        }
        CubeCmd::E1 { n, dims } => {
            let mut r = Report::new("cube e1");
            let e = e1_page(dims, *n);
            for (m, d) in e.iter().enumerate() {
                r.line(format!("level {m}: {d}"));
            }
            let total: usize = e.iter().sum();
            r.value(total, json!({ "levels": e, "total": total }));
            Ok(r)
        }
    }
}

fn algebra(kind: Kind) -> DotAlgebra {
    DotAlgebra::new(match kind {
        Kind::Unknot => DotKind::Unknot,
        Kind::Flag => DotKind::Flag,
    })
}

fn algebra_cmd(c: &AlgebraCmd) -> Result<Report> {
    match c {
        AlgebraCmd::Pair { kind, a, b } => {
            let alg = algebra(*kind);
            let mut r = Report::new("algebra pair");
            match (a, b) {
                (Some(a), Some(b)) => {
                    let (x, y) = (alg.parse(a)?, alg.parse(b)?);
                    let v = alg.pairing(&x, &y);
                    r.value(bit(v), json!({ "pairing": bit(v) }));
                }
                (None, None) => {
                    let g = alg.gram_matrix();
                    let rows: Vec<Vec<u8>> = (0..g.rows())
                        .map(|i| (0..g.cols()).map(|j| bit(g.get(i, j))).collect())
                        .collect();
                    let names: Vec<String> = alg
                        .basis()
                        .into_iter()
                        .map(|m| alg.format(&foamcalc_core::homalg::DotPoly::monomial(m)))
                        .collect();
                    r.line(format!("basis: {}", names.join(", ")));
                    for row in &rows {
                        r.line(row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
                    }
                    r.value(g.rank(), json!({ "basis": names, "gram": rows, "rank": g.rank() }));
                }
                _ => bail!("give two elements, or none for the Gram matrix"),
            }
            Ok(r)
        }
        AlgebraCmd::Reduce { kind, poly } => {
            let alg = algebra(*kind);
            let mut r = Report::new("algebra reduce");
            let p = alg.reduce(&alg.parse(poly)?);
            let text = alg.format(&p);
            r.value(&text, json!({ "reduced": text, "coords": alg.coords(&p) }));
            Ok(r)
        }
    }
}

/// Corpus read from a directory: webs have `vertices`, closed foams have `facets`.
fn corpus_from(r: &mut Report, dir: &Path) -> Result<(Vec<CorpusWeb>, Vec<(String, PreFoam)>)> {
    let mut webs = Vec::new();
    let mut foams = Vec::new();
    for p in io::json_files(dir)? {
        let input = load(r, &p)?;
        let raw: Value = io::parse(&input)?;
        let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or("?").to_string();
        if raw.get("facets").is_some() && raw.get("boundary_web").is_none() {
            foams.push((stem, io::parse::<PreFoam>(&input)?));
        } else if raw.get("vertices").is_some() {
            let w = io::web(&input)?;
            let planar = if raw.get("rotation").is_some() {
                Some(io::parse::<RotationWeb>(&input)?)
            } else {
                None
            };
            webs.push(CorpusWeb {
                name: Box::leak(stem.into_boxed_str()),
                web: w,
                planar,
            });
        }
    }
    Ok((webs, foams))
}

fn suite_cmd(a: &SuiteArgs) -> Result<Report> {
    let name = match a.name {
        SuiteName::Relations => "relations",
        SuiteName::Welldef => "welldef",
        SuiteName::Conjecture => "conjecture",
        SuiteName::Algebra => "algebra",
    };
    let mut r = Report::new(&format!("suite {name}"));
    let (webs, foams) = match &a.corpus {
        Some(d) => corpus_from(&mut r, d)?,
        None => (corpus::webs(), corpus::foams()),
    };
    let rep: SuiteReport = match a.name {
        SuiteName::Relations => {
            let mut all = foams;
            all.extend(suites::random_foams(a.seed, a.random.unwrap_or(200)));
            suites::relations_suite(&all)
        }
        SuiteName::Welldef => suites::welldef_suite(&foams),
        SuiteName::Conjecture => suites::conjecture_suite(&webs, a.seed, a.random.unwrap_or(100)),
        SuiteName::Algebra => suites::algebra_suite(a.seed, a.random.unwrap_or(50)),
    };
    if !rep.rows.is_empty() {
        r.line(format!("{:<14} {:>8} {:>8} agree", "web", "reduced", "tait"));
        r.lines.extend(suites::format_rows(&rep.rows));
    }
    for p in &rep.properties {
        if p.passed() {
            r.line(format!("PASS {} ({} checked)", p.name, p.checked));
        } else {
            r.line(format!(
                "FAIL {} ({} of {} failed)",
                p.name,
                p.failures.len(),
                p.checked
            ));
            for f in p.failures.iter().take(5) {
                r.line(format!("  {f}"));
            }
        }
    }
    r.ok = rep.passed();
    r.value(rep.failure_count(), serde_json::to_value(&rep)?);
    Ok(r)
}

/// Every corpus file by relative path, in canonical form.
pub fn corpus_files() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for cw in corpus::webs() {
        let text = match &cw.planar {
            Some(rw) => io::canonical(rw),
            None => io::canonical(&cw.web),
        };
        out.push((format!("{}.json", cw.name), text));
    }
    for (name, f) in corpus::foams() {
        out.push((format!("{name}.json"), io::canonical(&f)));
    }
    for (name, g) in corpus::unknot_generators() {
        out.push((format!("generators/unknot/{name}.json"), io::canonical(&g)));
    }
    for (name, g) in corpus::theta_generators() {
        out.push((format!("generators/theta/{name}.json"), io::canonical(&g)));
    }
    out
}

fn corpus_cmd(c: &CorpusCmd) -> Result<Report> {
    match c {
        CorpusCmd::Write { dir } => {
            let mut r = Report::new("corpus write");
            let files = corpus_files();
            for (rel, text) in &files {
                let p = dir.join(rel);
                if let Some(parent) = p.parent() {
                    fs::create_dir_all(parent).with_context(|| format!("cannot create {}", parent.display()))?;
                }
                fs::write(&p, text).with_context(|| format!("cannot write {}", p.display()))?;
                r.line(p.display().to_string());
            }
            let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
            r.value(files.len(), json!({ "files": names }));
            Ok(r)
        }
        CorpusCmd::Check { dir } => {
            let mut r = Report::new("corpus check");
            let mut bad = Vec::new();
            for (rel, text) in corpus_files() {
                let p = dir.join(&rel);
                let input = match io::read(&p) {
                    Ok(i) => i,
                    Err(_) => {
                        bad.push(format!("{rel}: missing"));
                        continue;
                    }
                };
                r.input(&input);
                // parse and re-serialize through the typed model
                let raw: Value = io::parse(&input)?;
                let again = if raw.get("boundary_web").is_some() {
                    io::canonical(&io::fragment(&input)?)
                } else if raw.get("facets").is_some() {
                    io::canonical(&io::parse::<PreFoam>(&input)?)
                } else if raw.get("rotation").is_some() {
                    io::canonical(&io::parse::<RotationWeb>(&input)?)
                } else {
                    io::canonical(&io::web(&input)?)
                };
                if again != input.text {
                    bad.push(format!("{rel}: not in canonical form"));
                } else if again != text {
                    bad.push(format!("{rel}: differs from the built-in corpus"));
                }
            }
            for b in &bad {
                r.line(b.clone());
            }
            r.ok = bad.is_empty();
            r.value(bad.len(), json!({ "problems": bad }));
            Ok(r)
        }
    }
}
