use std::fmt::Write;

use num_bigint::BigUint;
use serde::Serialize;

use quiltkit::content::{content_report, ContentOptions, VERSION};
use quiltkit::dessin::{build_dessin, export_dessin, Dessin, ExportFormat, SurfaceInvariants};
use quiltkit::farey::{iguanodon_symbol, triangulate, FareySymbol};
use quiltkit::habiro::{
    clique_graph, comaximal, cyclotomic, cyclotomic_resultant, default_radii, hits_every_component,
    is_saturated, prime_power_ratio, zagier_radial_check, CyclotomicInteger, HabiroElement,
};
use quiltkit::permgroup::{group_from_dessin, AltSym, Permutation, PermutationGroup};
use quiltkit::quiver::{
    euler_form, one_quiver_modular, surface_local_quiver, DimensionVector5, QuiverPresentation,
};
use quiltkit::reptheory::{
    tqft_count_brute, tqft_count_characters, CharacterTable, ReptheoryError,
};

use crate::error::CliError;
use crate::{Cli, Command, Export, HabiroCommand, QuiverCommand, SymbolInput};

/// Every JSON report starts with the tool version and the seed.
#[derive(Serialize)]
struct Envelope<T> {
    version: &'static str,
    seed: u64,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(cli: &Cli, body: T) -> Result<String, CliError> {
    let env = Envelope {
        version: VERSION,
        seed: cli.seed,
        body,
    };
    serde_json::to_string_pretty(&env)
        .map(|s| s + "\n")
        .map_err(|e| CliError::inconsistent(e.to_string()))
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Farey(input) => farey(cli, input),
        Command::Dessin { input, export } => dessin(cli, input, *export),
        Command::Group {
            input,
            generators,
            degree,
            table,
            tqft,
        } => group(cli, input, generators, *degree, *table, *tqft),
        Command::Content(input) => content(cli, input),
        Command::Quiver(q) => quiver(cli, q),
        Command::Habiro(h) => habiro(cli, h),
    }
}

fn read_symbol(input: &SymbolInput) -> Result<FareySymbol, CliError> {
    match (&input.symbol, input.iguanodon) {
        (_, Some(n)) => Ok(iguanodon_symbol(n)?),
        (Some(text), None) if text.trim_start().starts_with('{') => {
            let value: serde_json::Value = serde_json::from_str(text)
                .map_err(|e| CliError::validation(format!("symbol JSON: {e}")))?;
            Ok(FareySymbol::from_json(&value)?)
        }
        (Some(text), None) => Ok(text.parse()?),
        (None, None) => Err(CliError::validation("give a symbol or --iguanodon N")),
    }
}

fn cycle_notation(p: &Permutation) -> String {
    let cycles: Vec<String> = p
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let points: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            format!("({})", points.join(" "))
        })
        .collect();
    if cycles.is_empty() {
        "()".into()
    } else {
        cycles.concat()
    }
}

#[derive(Serialize)]
struct FareyReport {
    symbol: String,
    form: serde_json::Value,
    vertex_count: usize,
    odd_sides: usize,
    even_sides: usize,
    triangles: Vec<[String; 3]>,
}

fn farey(cli: &Cli, input: &SymbolInput) -> Result<String, CliError> {
    let s = read_symbol(input)?;
    let tri = triangulate(&s)?;
    let report = FareyReport {
        symbol: s.to_string(),
        form: s.to_json(),
        vertex_count: s.vertex_count(),
        odd_sides: s.odd_sides(),
        even_sides: s.even_sides(),
        triangles: tri
            .triangles()
            .iter()
            .map(|t| t.map(|v| v.to_string()))
            .collect(),
    };
    if cli.json {
        return to_json(cli, report);
    }
    let mut out = String::new();
    let _ = writeln!(out, "symbol     {}", report.symbol);
    let _ = writeln!(out, "vertices   {}", report.vertex_count);
    let _ = writeln!(
        out,
        "odd sides  {}, even sides {}",
        report.odd_sides, report.even_sides
    );
    let _ = writeln!(out, "triangles  {}", report.triangles.len());
    for t in &report.triangles {
        let _ = writeln!(out, "  ({}, {}, {})", t[0], t[1], t[2]);
    }
    Ok(out)
}

#[derive(Serialize)]
struct DessinReport {
    symbol: String,
    degree: usize,
    /// 1-based image arrays.
    sigma0: Vec<u32>,
    sigma1: Vec<u32>,
    surface: SurfaceInvariants,
}

fn dessin(cli: &Cli, input: &SymbolInput, export: Option<Export>) -> Result<String, CliError> {
    let s = read_symbol(input)?;
    let d = build_dessin(&s)?;
    if let Some(Export::Dot) = export {
        return Ok(export_dessin(&d, ExportFormat::Dot));
    }
    let report = DessinReport {
        symbol: s.to_string(),
        degree: d.degree(),
        sigma0: d.sigma0().to_one_based(),
        sigma1: d.sigma1().to_one_based(),
        surface: d.surface_invariants(),
    };
    if cli.json || matches!(export, Some(Export::Json)) {
        return to_json(cli, report);
    }
    let mut out = String::new();
    let _ = writeln!(out, "symbol   {}", report.symbol);
    let _ = writeln!(out, "degree   {}", report.degree);
    let _ = writeln!(out, "sigma0   {}", cycle_notation(d.sigma0()));
    let _ = writeln!(out, "sigma1   {}", cycle_notation(d.sigma1()));
    let inv = &report.surface;
    let _ = writeln!(
        out,
        "surface  genus {}, cusps {}, e2 {}, e3 {}, index {}",
        inv.genus, inv.cusps, inv.e2, inv.e3, inv.index
    );
    Ok(out)
}

#[derive(Serialize)]
struct ClassRow {
    representative: String,
    size: u64,
    element_order: u64,
    cycle_type: Vec<usize>,
}

#[derive(Serialize)]
struct TqftCounts {
    genus: u32,
    /// Homomorphism counts as decimal strings; null when over a bound.
    brute_force: Option<String>,
    character_formula: Option<String>,
}

#[derive(Serialize)]
struct GroupReport {
    source: String,
    degree: usize,
    generators: Vec<String>,
    order: String,
    transitive: bool,
    two_transitive: Option<bool>,
    classification: AltSym,
    base: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classes: Option<Vec<ClassRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    character_table: Option<CharacterTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tqft: Option<TqftCounts>,
}

fn group_source(
    input: &SymbolInput,
    generators: &[String],
    degree: Option<usize>,
) -> Result<(String, PermutationGroup), CliError> {
    if generators.is_empty() {
        let s = read_symbol(input)?;
        let d: Dessin = build_dessin(&s)?;
        return Ok((s.to_string(), group_from_dessin(&d)));
    }
    if input.symbol.is_some() || input.iguanodon.is_some() {
        return Err(CliError::validation(
            "give either a symbol or --gen, not both",
        ));
    }
    let n = degree.ok_or_else(|| CliError::validation("--gen needs --degree"))?;
    let gens = generators
        .iter()
        .map(|g| Permutation::parse_cycles(g, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(("generators".into(), PermutationGroup::new(n, gens)?))
}

fn tqft_counts(
    cli: &Cli,
    g: &PermutationGroup,
    genus: u32,
    table: Option<&CharacterTable>,
) -> Result<TqftCounts, CliError> {
    let keep_bounded = |r: Result<BigUint, ReptheoryError>| match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_size_bound() => Ok(None),
        Err(e) => Err(CliError::from(e)),
    };
    let brute = keep_bounded(tqft_count_brute(genus, g, cli.brute_bound))?;
    let formula = match table {
        Some(t) => Some(tqft_count_characters(genus, t)),
        None => keep_bounded(
            CharacterTable::compute(g, cli.class_bound).map(|t| tqft_count_characters(genus, &t)),
        )?,
    };
    match (&brute, &formula) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::inconsistent(format!(
                "brute-force count {a} disagrees with the character formula {b}"
            )))
        }
        (None, None) => {
            return Err(CliError {
                kind: crate::error::ExitKind::SizeBound,
                message: "group too large for both homomorphism counts".into(),
            })
        }
        _ => {}
    }
    Ok(TqftCounts {
        genus,
        brute_force: brute.map(|v| v.to_string()),
        character_formula: formula.map(|v| v.to_string()),
    })
}

fn group(
    cli: &Cli,
    input: &SymbolInput,
    generators: &[String],
    degree: Option<usize>,
    with_table: bool,
    tqft: Option<u32>,
) -> Result<String, CliError> {
    let (source, g) = group_source(input, generators, degree)?;
    let g = g.with_seed(cli.seed);
    let transitive = g.is_transitive();
    let two_transitive = if transitive {
        Some(g.is_2transitive()?)
    } else {
        None
    };
    let table = if with_table {
        Some(CharacterTable::compute(&g, cli.class_bound)?)
    } else {
        None
    };
    let classes = table.as_ref().map(|t| {
        let c = t.classes();
        (0..c.len())
            .map(|k| ClassRow {
                representative: cycle_notation(&c.representatives()[k]),
                size: c.sizes()[k],
                element_order: c.element_orders()[k],
                cycle_type: c.representatives()[k].cycle_type(),
            })
            .collect()
    });
    let tqft = tqft
        .map(|genus| tqft_counts(cli, &g, genus, table.as_ref()))
        .transpose()?;
    let report = GroupReport {
        source,
        degree: g.degree(),
        generators: g.generators().iter().map(cycle_notation).collect(),
        order: g.order().to_string(),
        transitive,
        two_transitive,
        classification: g.alt_sym(),
        base: g.chain().base().iter().map(|b| b + 1).collect(),
        classes,
        character_table: table,
        tqft,
    };
    if cli.json {
        return to_json(cli, report);
    }
    let mut out = String::new();
    let _ = writeln!(out, "source          {}", report.source);
    let _ = writeln!(out, "degree          {}", report.degree);
    let _ = writeln!(out, "order           {}", report.order);
    let _ = writeln!(out, "classification  {:?}", report.classification);
    let _ = writeln!(out, "transitive      {}", report.transitive);
    if let Some(t) = report.two_transitive {
        let _ = writeln!(out, "2-transitive    {t}");
    }
    if let (Some(rows), Some(t)) = (&report.classes, &report.character_table) {
        let _ = writeln!(out, "classes         {} (prime {})", rows.len(), t.prime());
        for (k, row) in rows.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {k:>3}  size {:>8}  order {:>3}  {}",
                row.size, row.element_order, row.representative
            );
        }
        let _ = writeln!(out, "degrees         {:?}", t.degrees());
    }
    if let Some(c) = &report.tqft {
        let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "over bound".into());
        let _ = writeln!(
            out,
            "genus {} homomorphisms: brute force {}, character formula {}",
            c.genus,
            show(&c.brute_force),
            show(&c.character_formula)
        );
    }
    Ok(out)
}

fn content(cli: &Cli, input: &SymbolInput) -> Result<String, CliError> {
    let s = read_symbol(input)?;
    let report = content_report(
        &s,
        ContentOptions {
            seed: cli.seed,
            class_bound: cli.class_bound,
        },
    )?;
    if cli.json {
        return serde_json::to_string_pretty(&report)
            .map(|s| s + "\n")
            .map_err(|e| CliError::inconsistent(e.to_string()));
    }
    Ok(report.to_string())
}

fn quiver_text(q: &QuiverPresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vertices  {}", q.vertices.join(" "));
    let _ = writeln!(out, "arrows");
    for (label, row) in q.vertices.iter().zip(&q.arrows) {
        let cells: Vec<String> = row.iter().map(|n| format!("{n:>4}")).collect();
        let _ = writeln!(out, "  {label:<6}{}", cells.join(""));
    }
    out
}

/// Accepts "a1,a2;b1,b2,b3" with optional parentheses.
fn parse_dimension_vector(text: &str) -> Result<DimensionVector5, CliError> {
    let bad = || {
        CliError::validation(format!(
            "expected a dimension vector a1,a2;b1,b2,b3, found {text:?}"
        ))
    };
    let parts: Vec<u64> = text
        .trim_matches(|c| c == '(' || c == ')')
        .split([',', ';'])
        .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let c: [u64; 5] = parts.try_into().map_err(|_| bad())?;
    Ok(DimensionVector5::from_components(c))
}

#[derive(Serialize)]
struct EulerReport {
    alpha: DimensionVector5,
    beta: DimensionVector5,
    chi_alpha_beta: i64,
    chi_beta_alpha: i64,
}

fn quiver(cli: &Cli, q: &QuiverCommand) -> Result<String, CliError> {
    let presentation = match q {
        QuiverCommand::OneModular => one_quiver_modular(),
        QuiverCommand::Surface { genus, dims } => surface_local_quiver(*genus, dims)?,
        QuiverCommand::Euler { alpha, beta } => {
            let (a, b) = (
                parse_dimension_vector(alpha)?,
                parse_dimension_vector(beta)?,
            );
            let report = EulerReport {
                alpha: a,
                beta: b,
                chi_alpha_beta: euler_form(&a, &b),
                chi_beta_alpha: euler_form(&b, &a),
            };
            if cli.json {
                return to_json(cli, report);
            }
            return Ok(format!(
                "chi({a}, {b}) = {}\nchi({b}, {a}) = {}\n",
                report.chi_alpha_beta, report.chi_beta_alpha
            ));
        }
    };
    if cli.json {
        to_json(cli, presentation)
    } else {
        Ok(quiver_text(&presentation))
    }
}

#[derive(Serialize)]
struct PhiReport {
    n: u64,
    degree: usize,
    polynomial: String,
    /// Coefficients from the constant term up.
    coefficients: Vec<i64>,
}

#[derive(Serialize)]
struct ComaxReport {
    m: u64,
    n: u64,
    comaximal: bool,
    resultant: String,
    prime: Option<u64>,
}

#[derive(Serialize)]
struct CliqueReport {
    nodes: Vec<u64>,
    edges: Vec<(u64, u64)>,
    components: Vec<Vec<u64>>,
    saturated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    subset: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hits_every_component: Option<bool>,
}

#[derive(Serialize)]
struct KontsevichReport {
    m: u64,
    level: u64,
    value: CyclotomicInteger,
    /// Numerical value at exp(2 pi i / m), as [re, im].
    complex: [f64; 2],
}

fn parse_set(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim().parse::<u64>().map_err(|_| {
                CliError::validation(format!("expected a positive integer, found {t:?}"))
            })
        })
        .collect()
}

fn habiro(cli: &Cli, h: &HabiroCommand) -> Result<String, CliError> {
    match h {
        HabiroCommand::Phi { n } => {
            if *n == 0 {
                return Err(CliError::validation("index must be positive"));
            }
            let p = cyclotomic(*n);
            let coefficients = p
                .coeffs()
                .iter()
                .map(|c| {
                    i64::try_from(c)
                        .map_err(|_| CliError::inconsistent("coefficient exceeds 64 bits"))
                })
                .collect::<Result<_, _>>()?;
            let report = PhiReport {
                n: *n,
                degree: p.degree().unwrap_or(0),
                polynomial: p.to_string(),
                coefficients,
            };
            if cli.json {
                return to_json(cli, report);
            }
            Ok(format!("{}\n", report.polynomial))
        }
        HabiroCommand::Comax { m, n } => {
            let c = comaximal(*m, *n)?;
            let r = cyclotomic_resultant(*m, *n)?;
            let report = ComaxReport {
                m: *m,
                n: *n,
                comaximal: c,
                resultant: r.to_string(),
                prime: prime_power_ratio(*m, *n).map(|(p, _)| p),
            };
            if cli.json {
                return to_json(cli, report);
            }
            let verdict = if c { "comaximal" } else { "not comaximal" };
            Ok(format!("{verdict}, resultant {r}\n"))
        }
        HabiroCommand::Clique { set, subset } => {
            let set = parse_set(set)?;
            let graph = clique_graph(&set)?;
            let subset = subset.as_deref().map(parse_set).transpose()?;
            let hits = subset
                .as_ref()
                .map(|s| hits_every_component(s, &set))
                .transpose()?;
            let report = CliqueReport {
                nodes: graph.nodes().to_vec(),
                edges: graph.edges().to_vec(),
                components: graph.components().to_vec(),
                saturated: is_saturated(&set),
                subset,
                hits_every_component: hits,
            };
            if cli.json {
                return to_json(cli, report);
            }
            let mut out = String::new();
            let edges: Vec<String> = report
                .edges
                .iter()
                .map(|(a, b)| format!("{a}-{b}"))
                .collect();
            let _ = writeln!(out, "edges       {}", edges.join(" "));
            let comps: Vec<String> = report.components.iter().map(|c| format!("{c:?}")).collect();
            let _ = writeln!(out, "components  {}", comps.join(" "));
            let _ = writeln!(out, "saturated   {}", report.saturated);
            if let Some(h) = report.hits_every_component {
                let _ = writeln!(out, "subset hits every component: {h}");
            }
            Ok(out)
        }
        HabiroCommand::EvalKontsevich { m, level } => {
            let level = level.unwrap_or(*m);
            let level_usize = usize::try_from(level)
                .map_err(|_| CliError::validation("truncation level is too large"))?;
            let value = HabiroElement::kontsevich(level_usize).evaluate_at_root(*m)?;
            let z = value.to_complex();
            let report = KontsevichReport {
                m: *m,
                level,
                value,
                complex: [z.re, z.im],
            };
            if cli.json {
                return to_json(cli, report);
            }
            Ok(format!("{}\n", report.value))
        }
        HabiroCommand::ZagierCheck { m, tol } => {
            if !(*tol > 0.0) {
                return Err(CliError::validation("tolerance must be positive"));
            }
            let report = zagier_radial_check(*m, &default_radii(), *tol)?;
            if !report.passed {
                return Err(CliError::inconsistent(format!(
                    "radial limit differs from the exact value by {:.3e}, tolerance {tol}",
                    report.difference
                )));
            }
            if cli.json {
                return to_json(cli, report);
            }
            Ok(format!(
                "exact {}\nextrapolated {:.6} {:+.6}i\ndifference {:.3e} (tolerance {tol}): pass\n",
                report.exact, report.extrapolated[0], report.extrapolated[1], report.difference
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_vector_forms() {
        let want = DimensionVector5::new(1, 2, 3, 4, 5);
        assert_eq!(parse_dimension_vector("1,2;3,4,5").unwrap(), want);
        assert_eq!(parse_dimension_vector("(1,2;3,4,5)").unwrap(), want);
        assert!(parse_dimension_vector("1,2;3,4").is_err());
        assert!(parse_dimension_vector("1,-2;3,4,5").is_err());
    }

    #[test]
    fn cycles_are_one_based() {
        let p = Permutation::parse_cycles("(1 2 3)(4 5)", 6).unwrap();
        assert_eq!(cycle_notation(&p), "(1 2 3)(4 5)");
        assert_eq!(cycle_notation(&Permutation::identity(3)), "()");
    }

    #[test]
    fn sets_parse() {
        assert_eq!(parse_set("1, 2,6").unwrap(), vec![1, 2, 6]);
        assert!(parse_set("1,x").is_err());
    }
}
