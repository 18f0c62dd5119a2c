use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use permalg::algebra::sbar_matrix;
use permalg::kantor::{sweep_unweighted, sweep_weighted, unweighted_point, weighted_point};
use permalg::models::AlphabetProfile;
use permalg::ramsey::{ramsey_ordering, verify_conjecture_conditions, verify_ramsey_property};
use permalg::shuffle::{lyndon_words_of_weight, shuffle};
use permalg::transforms::{self, Direction};
use permalg::verify::{run_all, Scale, Settings};
use permalg::{Element, GroupModel, IntSeries, Rational, Word};

use crate::{Cli, Command, Format, ModelArgs, Transform};

/// Report text and whether a verification failed.
pub struct Outcome {
    text: String,
    failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            failed: false,
        }
    }

    pub fn code(&self) -> u8 {
        u8::from(self.failed)
    }

    pub fn write(&self, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => fs::write(p, &self.text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{}", self.text);
                Ok(())
            }
        }
    }
}

fn load_model(args: &ModelArgs) -> Result<Arc<GroupModel>> {
    let model = match &args.table {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            GroupModel::load_custom(&text)
                .with_context(|| format!("loading table {}", path.display()))?
        }
        None => GroupModel::builtin(&args.model)?,
    };
    Ok(Arc::new(model))
}

/// An orbit key, or `@path` to an element file.
fn load_element(model: &Arc<GroupModel>, operand: &str) -> Result<Element> {
    match operand.strip_prefix('@') {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            Ok(Element::parse(model, &text).with_context(|| format!("parsing element {path}"))?)
        }
        None => Ok(Element::basis(model, model.parse_key(operand)?)?),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Lyndon {
            alphabet,
            weight,
            list,
        } => lyndon(alphabet, *weight, *list),
        Command::Shuffle { u, v } => {
            let u: Word = u.parse()?;
            let v: Word = v.parse()?;
            Ok(Outcome::ok(shuffle(&u, &v).to_string()))
        }
        Command::Product { model, x, y } => {
            let model = load_model(model)?;
            let p = load_element(&model, x)?.product(&load_element(&model, y)?)?;
            Ok(Outcome::ok(p.to_string()))
        }
        Command::Basis {
            model,
            weight,
            element,
        } => basis(&load_model(model)?, *weight, element.as_deref()),
        Command::Ramsey { model, weight, pad } => {
            let model = load_model(model)?;
            let ordering = ramsey_ordering(&model, *weight, pad.unwrap_or(2 * weight))?;
            let report = verify_ramsey_property(&ordering, &model)?;
            let mut text = ordering.to_string();
            for v in &report.violations {
                writeln!(text, "violation\t{v}")?;
            }
            writeln!(text, "{}", if report.holds() { "PASS" } else { "FAIL" })?;
            Ok(Outcome {
                text,
                failed: !report.holds(),
            })
        }
        Command::Verify { model, m, n, pad } => {
            let model = load_model(model)?;
            let report = verify_conjecture_conditions(&model, *m, *n, *pad)?;
            Ok(Outcome {
                text: report.to_string(),
                failed: !report.holds(),
            })
        }
        Command::Kantor {
            d,
            e,
            f,
            weighted,
            trials,
        } => kantor(*d, *e, *f, *weighted, *trials, cli.seed),
        Command::Transform {
            op,
            input,
            ones,
            order,
            inverse,
            csv,
        } => {
            let series = match (input, ones) {
                (Some(path), _) => {
                    let text = fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    IntSeries::parse(&text, Some(*order))?
                }
                (None, Some(k)) => IntSeries::profile(*k, *order),
                (None, None) => bail!("give --in or --ones"),
            };
            transform(*op, &series, *inverse, *csv)
        }
        Command::VerifyAll { quick, format } => {
            let settings = Settings {
                scale: if *quick { Scale::Quick } else { Scale::Full },
                seed: cli.seed,
            };
            let results = run_all(&settings);
            let mut text = String::new();
            if *format == Format::Tsv {
                writeln!(text, "id\tname\tverdict\tseconds\tbound\tdetail")?;
            }
            for r in &results {
                match format {
                    Format::Text => writeln!(text, "{r}")?,
                    Format::Tsv => writeln!(text, "{}", r.tsv())?,
                }
            }
            let failed = results.iter().filter(|r| !r.passed()).count();
            if *format == Format::Text {
                writeln!(
                    text,
                    "{} of {} criteria passed",
                    results.len() - failed,
                    results.len()
                )?;
            }
            Ok(Outcome {
                text,
                failed: failed > 0,
            })
        }
    }
}

fn lyndon(alphabet: &[u32], weight: u32, list: bool) -> Result<Outcome> {
    let profile =
        AlphabetProfile::new(alphabet.iter().enumerate().map(|(i, &c)| (i as u32 + 1, c)))?;
    let words = lyndon_words_of_weight(&profile.blocks(), weight);
    let mut text = String::new();
    if list {
        for w in &words {
            writeln!(text, "{w}")?;
        }
    }
    writeln!(text, "count {}", words.len())?;
    Ok(Outcome::ok(text))
}

fn basis(model: &Arc<GroupModel>, weight: Option<u32>, element: Option<&str>) -> Result<Outcome> {
    let mut text = String::new();
    if let Some(n) = weight {
        let (words, matrix) = sbar_matrix::<Rational>(model, n)?;
        for (i, w) in words.iter().enumerate() {
            writeln!(text, "{i}\t{w}")?;
        }
        for row in &matrix {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(text, "{}", cells.join(" "))?;
        }
    }
    if let Some(x) = element {
        for (w, c) in load_element(model, x)?.to_generator_basis()? {
            writeln!(text, "{c} S({w})")?;
        }
    }
    if weight.is_none() && element.is_none() {
        bail!("give --weight or --element");
    }
    Ok(Outcome::ok(text))
}

fn kantor(
    d: u32,
    e: Option<u32>,
    f: Option<u32>,
    weighted: bool,
    trials: usize,
    seed: u64,
) -> Result<Outcome> {
    let points = match (e, f, weighted) {
        (Some(e), Some(f), false) => vec![unweighted_point(d, e, f)?],
        (Some(e), Some(f), true) => vec![weighted_point(d, e, f, trials, seed)?],
        (_, _, false) => sweep_unweighted(d),
        (_, _, true) => sweep_weighted(d, trials, seed),
    };
    let mut text = String::new();
    for p in &points {
        writeln!(text, "{p}")?;
    }
    Ok(Outcome {
        text,
        failed: points.iter().any(|p| !p.passed()),
    })
}

fn transform(op: Transform, s: &IntSeries, inverse: bool, csv: bool) -> Result<Outcome> {
    let direction = if inverse {
        Direction::Inverse
    } else {
        Direction::Forward
    };
    let render = |x: &IntSeries| {
        if csv {
            format!("{}\n", x.to_csv())
        } else {
            x.to_string()
        }
    };
    let out = match op {
        Transform::Invert => transforms::invert(s, direction),
        Transform::Euler => transforms::euler(s, direction)?,
        Transform::A2c => transforms::a_to_c(s),
        Transform::C2l => transforms::c_to_l(s)?,
        Transform::A2l => transforms::a_to_l(s)?,
        Transform::Realizable => {
            let r = transforms::exactly_realizable(s, s.order());
            let mut text = render(&r.witness);
            match &r.failure {
                None => writeln!(text, "realizable")?,
                Some((n, v)) => writeln!(text, "not realizable at {n}: {v}")?,
            }
            return Ok(Outcome {
                text,
                failed: !r.realizable(),
            });
        }
    };
    Ok(Outcome::ok(render(&out)))
}
