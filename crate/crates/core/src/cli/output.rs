use std::io::Write;

use serde_json::{json, Value};

use super::Format;
use crate::document::{round_sig, BpaDocument};
use crate::error::Result;
use crate::fusion::{CombinationRule, FusedDiagnostics};
use crate::isopignistic::{decompose as iso_decompose, relativize_with_scaling};
use crate::mass::MassFunction;
use crate::powerset::Frame;

fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(round_sig(v))
    } else {
        Value::Null
    }
}

fn nums(values: &[f64]) -> Value {
    Value::Array(values.iter().map(|&v| num(v)).collect())
}

fn show_key(key: &str) -> String {
    if key.is_empty() {
        "∅".to_string()
    } else {
        format!("{{{key}}}")
    }
}

fn write_json(value: &Value, out: &mut dyn Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn decompose(m: &MassFunction, format: Format, out: &mut dyn Write) -> Result<()> {
    let frame = m.frame();
    let iso = iso_decompose(m);
    let (rel, scalings) = relativize_with_scaling(m);
    let bel = m.belief_function();
    let pl = m.plausibility_function();
    let q = m.commonality_function();
    let b = m.implicability_function();
    let betp = m.betp().ok();
    let keys: Vec<String> = frame.subsets().map(|s| frame.subset_key(s)).collect();

    match format {
        Format::Json => {
            let subsets: Vec<Value> = frame
                .subsets()
                .map(|s| {
                    let i = s.index();
                    json!({
                        "key": keys[i],
                        "m": num(m.masses()[i]),
                        "bel": num(bel[i]),
                        "pl": num(pl[i]),
                        "q": num(q[i]),
                        "b": num(b[i]),
                        "iso": num(iso.values()[i]),
                        "relative": num(rel.values()[i]),
                    })
                })
                .collect();
            let scalings: Vec<Value> = scalings
                .iter()
                .map(|s| {
                    json!({
                        "layer": s.layer,
                        "bottleneck": s.bottleneck.map(|b| frame.subset_key(b)),
                        "coefficient": num(s.coefficient),
                    })
                })
                .collect();
            write_json(
                &json!({
                    "frame": frame.labels(),
                    "subsets": subsets,
                    "betp": betp.as_ref().map(|p| nums(&p.p)),
                    "possibility": betp.as_ref().map(|p| nums(&p.possibility())),
                    "scalings": scalings,
                }),
                out,
            )
        }
        Format::Csv => {
            writeln!(out, "subset,m,bel,pl,q,b,iso,relative")?;
            for s in frame.subsets() {
                let i = s.index();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    keys[i],
                    round_sig(m.masses()[i]),
                    round_sig(bel[i]),
                    round_sig(pl[i]),
                    round_sig(q[i]),
                    round_sig(b[i]),
                    round_sig(iso.values()[i]),
                    round_sig(rel.values()[i]),
                )?;
            }
            Ok(())
        }
        Format::Table => {
            writeln!(out, "frame: {frame}")?;
            writeln!(
                out,
                "{:<14} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9}",
                "subset", "m", "Bel", "Pl", "q", "b", "I", "Ĩ"
            )?;
            for s in frame.subsets() {
                let i = s.index();
                writeln!(
                    out,
                    "{:<14} {:>9.6} {:>9.6} {:>9.6} {:>9.6} {:>9.6} {:>9.6} {:>9.6}",
                    show_key(&keys[i]),
                    m.masses()[i],
                    bel[i],
                    pl[i],
                    q[i],
                    b[i],
                    iso.values()[i],
                    rel.values()[i],
                )?;
            }
            match &betp {
                Some(p) => {
                    writeln!(out, "BetP^N: {}", fmt_profile(frame, &p.p))?;
                    writeln!(out, "Poss:   {}", fmt_profile(frame, &p.possibility()))?;
                }
                None => writeln!(out, "BetP^N: undefined for the empty BPA")?,
            }
            for s in &scalings {
                let bottleneck = s
                    .bottleneck
                    .map_or("none".to_string(), |b| show_key(&frame.subset_key(b)));
                writeln!(
                    out,
                    "s({}) = {:.6}  bottleneck {bottleneck}",
                    s.layer, s.coefficient
                )?;
            }
            Ok(())
        }
    }
}

fn fmt_profile(frame: &Frame, values: &[f64]) -> String {
    frame
        .labels()
        .iter()
        .zip(values)
        .map(|(l, v)| format!("{l}={v:.6}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn summary(m: &MassFunction) -> (f64, f64, Option<f64>) {
    (m.conflict(), m.ignorance(), m.pignistic_entropy().ok())
}

pub fn fused(
    rule: &CombinationRule,
    m: &MassFunction,
    diagnostics: Option<&FusedDiagnostics>,
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    let frame = m.frame();
    let (conflict, ign, entropy) = summary(m);
    match format {
        Format::Json => {
            let diag = diagnostics.map(|d| {
                let relative: serde_json::Map<String, Value> = frame
                    .subsets()
                    .map(|s| (frame.subset_key(s), num(d.relative.value(s))))
                    .collect();
                json!({
                    "raw_propensity": nums(&d.raw_propensity),
                    "height": num(d.height),
                    "relative": relative,
                })
            });
            write_json(
                &json!({
                    "rule": rule.to_string(),
                    "bpa": BpaDocument::from_mass(m),
                    "conflict": num(conflict),
                    "ignorance": num(ign),
                    "entropy": entropy.map(num),
                    "diagnostics": diag,
                }),
                out,
            )
        }
        Format::Csv => {
            writeln!(out, "subset,mass")?;
            for s in frame.subsets() {
                writeln!(out, "{},{}", frame.subset_key(s), round_sig(m.mass(s)))?;
            }
            Ok(())
        }
        Format::Table => {
            writeln!(out, "rule: {rule}")?;
            for s in frame.subsets() {
                writeln!(
                    out,
                    "{:<14} {:.6}",
                    show_key(&frame.subset_key(s)),
                    m.mass(s)
                )?;
            }
            if let Some(d) = diagnostics {
                writeln!(
                    out,
                    "raw propensity: {}  height {:.6}",
                    fmt_profile(frame, &d.raw_propensity),
                    d.height
                )?;
            }
            writeln!(
                out,
                "m(∅) = {conflict:.6}  Ign = {ign:.6}  H = {}",
                fmt_opt(entropy, 6)
            )?;
            Ok(())
        }
    }
}

fn fmt_opt(v: Option<f64>, digits: usize) -> String {
    v.map_or("undefined".to_string(), |v| format!("{v:.digits$}"))
}

pub fn comparison(
    rows: &[(String, Result<MassFunction>)],
    format: Format,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(rule, res)| match res {
                    Ok(m) => {
                        let (e, ign, h) = summary(m);
                        json!({
                            "rule": rule,
                            "conflict": num(e),
                            "ignorance": num(ign),
                            "entropy": h.map(num),
                            "bpa": BpaDocument::from_mass(m),
                        })
                    }
                    Err(err) => json!({ "rule": rule, "error": err.to_string() }),
                })
                .collect();
            write_json(&Value::Array(items), out)
        }
        Format::Csv => {
            writeln!(out, "rule,conflict,ignorance,entropy,error")?;
            for (rule, res) in rows {
                match res {
                    Ok(m) => {
                        let (e, ign, h) = summary(m);
                        writeln!(
                            out,
                            "{rule},{},{},{},",
                            round_sig(e),
                            round_sig(ign),
                            h.map_or(String::new(), |h| round_sig(h).to_string())
                        )?;
                    }
                    Err(err) => {
                        writeln!(out, "{rule},,,,\"{}\"", err.to_string().replace('"', "'"))?
                    }
                }
            }
            Ok(())
        }
        Format::Table => {
            writeln!(out, "{:<28} {:>9} {:>9} {:>9}", "rule", "m(∅)", "Ign", "H")?;
            for (rule, res) in rows {
                match res {
                    Ok(m) => {
                        let (e, ign, h) = summary(m);
                        writeln!(out, "{rule:<28} {e:>9.4} {ign:>9.4} {:>9}", fmt_opt(h, 4))?;
                    }
                    Err(err) => writeln!(out, "{rule:<28} error: {err}")?,
                }
            }
            Ok(())
        }
    }
}

pub fn sweep(rows: &[(f64, MassFunction)], out: &mut dyn Write) -> Result<()> {
    let Some((_, first)) = rows.first() else {
        return Ok(());
    };
    let frame = first.frame();
    let header: Vec<String> = frame
        .subsets()
        .map(|s| format!("m({})", frame.subset_key(s)))
        .collect();
    writeln!(out, "parameter,{}", header.join(","))?;
    for (param, m) in rows {
        let values: Vec<String> = m
            .masses()
            .iter()
            .map(|v| round_sig(*v).to_string())
            .collect();
        writeln!(out, "{},{}", round_sig(*param), values.join(","))?;
    }
    Ok(())
}
