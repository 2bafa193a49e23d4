use hyperchaos_core::certify::UnstableSetId;
use hyperchaos_core::horseshoe::{horseshoe_map, PlanePoint};
use hyperchaos_core::symbolic::{make_universal_sequence, periodic_point};
use hyperchaos_core::{BiSequence, CylinderSet, Word};
use serde::Serialize;

use crate::config::RunConfig;
use crate::output::write_csv;
use crate::CliError;

#[derive(Debug, PartialEq)]
pub enum Descriptor {
    Symbolic(BiSequence),
    Point(PlanePoint),
}

fn bad(descriptor: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("cannot parse descriptor `{descriptor}`: {reason}"))
}

pub fn parse(descriptor: &str, config: &RunConfig) -> Result<Descriptor, CliError> {
    let alphabet = config.alphabet;
    let (head, body) = descriptor.split_once(':').unwrap_or((descriptor, ""));
    let word = |text: &str| text.parse::<Word>().map_err(|e| bad(descriptor, e));
    let seq = match head {
        "periodic" => periodic_point(word(body)?).map_err(|e| bad(descriptor, e))?,
        "universal" if body.is_empty() => make_universal_sequence(alphabet),
        "universal" => {
            let past = BiSequence::periodic(word(body)?, 0).map_err(|e| bad(descriptor, e))?;
            UnstableSetId::new(past, alphabet)
                .map_err(|e| bad(descriptor, e))?
                .universal_member(alphabet)
        }
        "padded" => {
            let (cyl, pad) = body.rsplit_once(':').ok_or_else(|| bad(descriptor, "expected padded:<cylinder>:<pad>"))?;
            let cylinder: CylinderSet = cyl.parse().map_err(|e| bad(descriptor, e))?;
            let pad: u8 = pad.parse().map_err(|e| bad(descriptor, e))?;
            let window_start = cylinder.start();
            BiSequence::window_padded(cylinder.fixed().clone(), window_start, pad).map_err(|e| bad(descriptor, e))?
        }
        "eventual" => {
            let parts: Vec<&str> = body.split('/').collect();
            let [left, center, right, start] = parts[..] else {
                return Err(bad(descriptor, "expected eventual:<left>/<center>/<right>/<start>"));
            };
            let center = if center.is_empty() { Word::empty() } else { word(center)? };
            let start: i64 = start.parse().map_err(|e| bad(descriptor, e))?;
            BiSequence::eventually_periodic(word(left)?, center, start, word(right)?).map_err(|e| bad(descriptor, e))?
        }
        "point" => {
            let (x, y) = body.split_once(',').ok_or_else(|| bad(descriptor, "expected point:<x>,<y>"))?;
            let x: f64 = x.trim().parse().map_err(|e| bad(descriptor, e))?;
            let y: f64 = y.trim().parse().map_err(|e| bad(descriptor, e))?;
            return PlanePoint::new(x, y).map(Descriptor::Point).map_err(|e| bad(descriptor, e));
        }
        _ => return Err(bad(descriptor, "unknown kind")),
    };
    seq.validate(alphabet).map_err(|e| bad(descriptor, e))?;
    Ok(Descriptor::Symbolic(seq))
}

#[derive(Serialize)]
struct SymbolicRow {
    n: u64,
    distance: f64,
}

#[derive(Serialize)]
struct PlaneRow {
    n: u64,
    x: f64,
    y: f64,
    symbol: String,
}

pub fn run(config: &RunConfig, descriptor: &str, steps: u64) -> Result<(), CliError> {
    let path = config.out.join("orbit.csv");
    match parse(descriptor, config)? {
        Descriptor::Symbolic(s) => {
            let rows = (0..=steps)
                .map(|n| {
                    let d = config
                        .metric
                        .distance(&s.shift(n as i64), &s, config.tolerance)
                        .map_err(|e| CliError::Config(e.to_string()))?;
                    Ok(SymbolicRow { n, distance: d.value })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            write_csv(&path, &rows)?;
            println!("wrote {} rows to {}", rows.len(), path.display());
            Ok(())
        }
        Descriptor::Point(q) => {
            let hp = config.horseshoe;
            let mut rows = Vec::new();
            let mut p = q;
            let mut escaped = None;
            for n in 0..=steps {
                match hp.horizontal_strip(p.y) {
                    Some(sym) => rows.push(PlaneRow {
                        n,
                        x: p.x,
                        y: p.y,
                        symbol: sym.to_string(),
                    }),
                    None => {
                        rows.push(PlaneRow {
                            n,
                            x: p.x,
                            y: p.y,
                            symbol: "escaped".into(),
                        });
                        escaped = Some(n);
                        break;
                    }
                }
                if n < steps {
                    p = horseshoe_map(p, &hp).expect("strip membership checked above");
                }
            }
            write_csv(&path, &rows)?;
            println!("wrote {} rows to {}", rows.len(), path.display());
            match escaped {
                Some(n) => Err(CliError::Failed(format!("orbit left the square's strips at step {n}"))),
                None => Ok(()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Settings;

    fn config() -> RunConfig {
        Settings::default().build().unwrap()
    }

    #[test]
    fn descriptors_parse() {
        let c = config();
        for ok in [
            "periodic:12",
            "universal",
            "universal:21",
            "padded:12.121:1",
            "eventual:1/212/2/-1",
            "eventual:1//2/0",
            "point:0,0",
            "point:0.75, 0.25",
        ] {
            assert!(parse(ok, &c).is_ok(), "{ok}");
        }
        for bad in ["periodic:", "periodic:13", "circle", "point:2,0", "eventual:1/2", "padded:1.1"] {
            assert!(parse(bad, &c).is_err(), "{bad}");
        }
        assert_eq!(
            parse("periodic:12", &c).unwrap(),
            Descriptor::Symbolic(periodic_point("12".parse().unwrap()).unwrap())
        );
    }
}
