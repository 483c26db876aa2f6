//! JSON exports of a finished run: the cells, the projection levels and data
//! for plotting a two-dimensional decomposition. Output depends only on the
//! result, so identical runs give identical bytes.

use num_rational::BigRational;
use serde::Serialize;

use crate::engine::{CadResult, Failure, Status};
use crate::poly::Provenance;
use crate::realalg::{AlgNum, LiftRoots, SamplePoint};

pub const CELLS_SCHEMA: &str = "tticad-cells/1";
pub const PROJECTION_SCHEMA: &str = "tticad-projection/1";
pub const PLOT_SCHEMA: &str = "tticad-plot2d/1";

/// A real algebraic number: either a rational, or the unique root of
/// `defpoly` (integer coefficients, constant term first) in `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum NumJson {
    Rational {
        num: String,
        den: String,
    },
    Algebraic {
        defpoly: Vec<String>,
        lo: String,
        hi: String,
        approx: f64,
    },
}

impl From<&AlgNum> for NumJson {
    fn from(a: &AlgNum) -> Self {
        match a.as_rational() {
            Some(r) => NumJson::Rational {
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            },
            None => {
                let (lo, hi) = a.interval();
                NumJson::Algebraic {
                    defpoly: a.defpoly().iter().map(|c| c.to_string()).collect(),
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                    approx: a.to_f64(),
                }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SignJson {
    pub poly: String,
    pub sign: i8,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellJson {
    pub index: Vec<u32>,
    pub dim: usize,
    pub sample: Vec<NumJson>,
    pub signs: Vec<SignJson>,
    pub truths: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellsDump {
    pub schema: &'static str,
    pub mode: &'static str,
    pub status: Status,
    pub vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub cells: Vec<CellJson>,
}

pub fn cells(result: &CadResult) -> CellsDump {
    let cells = result
        .cells
        .iter()
        .map(|c| CellJson {
            index: c.index.clone(),
            dim: c.dim(),
            sample: c.sample.coords().iter().map(NumJson::from).collect(),
            signs: c
                .signs
                .iter()
                .map(|(p, s)| SignJson {
                    poly: p.to_string(),
                    sign: s.to_i8(),
                })
                .collect(),
            truths: c.truths.clone(),
        })
        .collect();
    CellsDump {
        schema: CELLS_SCHEMA,
        mode: result.mode.name(),
        status: result.status,
        vars: result.cad.order.names().to_vec(),
        failure: result.failure.clone(),
        cells,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjPolyJson {
    pub poly: String,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjLevelJson {
    pub var: String,
    pub polys: Vec<ProjPolyJson>,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionDump {
    pub schema: &'static str,
    pub mode: &'static str,
    pub vars: Vec<String>,
    /// Lowest variable first.
    pub levels: Vec<ProjLevelJson>,
}

pub fn projection(result: &CadResult) -> ProjectionDump {
    let order = &result.cad.order;
    let levels = (0..order.len())
        .map(|v| ProjLevelJson {
            var: order.name(v).to_string(),
            polys: result
                .projection
                .sets
                .get(v)
                .map(|s| {
                    s.entries()
                        .iter()
                        .map(|(p, prov)| ProjPolyJson {
                            poly: p.to_string(),
                            provenance: *prov,
                        })
                        .collect()
                })
                .unwrap_or_default(),
            basis: result
                .projection
                .bases
                .get(v)
                .map(|b| b.iter().map(|p| p.to_string()).collect())
                .unwrap_or_default(),
        })
        .collect();
    ProjectionDump {
        schema: PROJECTION_SCHEMA,
        mode: result.mode.name(),
        vars: order.names().to_vec(),
        levels,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveJson {
    pub poly: String,
    /// Points `(x, y)` on the real zero set, sampled along a grid in `x`.
    pub points: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlotCellJson {
    pub index: Vec<u32>,
    pub dim: usize,
    pub x: f64,
    pub y: f64,
    pub truths: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlotData {
    pub schema: &'static str,
    pub mode: &'static str,
    pub vars: Vec<String>,
    /// Abscissae of the sections over the base line, drawn as vertical lines.
    pub base_roots: Vec<NumJson>,
    pub curves: Vec<CurveJson>,
    pub cells: Vec<PlotCellJson>,
}

/// Plot data for a decomposition of the plane, with `steps + 1` grid columns
/// between one unit left of the leftmost base root and one unit right of the
/// rightmost.
pub fn plot2d(result: &CadResult, steps: u32) -> Result<PlotData, String> {
    let order = &result.cad.order;
    if order.len() != 2 {
        return Err(format!("plot data needs 2 variables, the problem has {}", order.len()));
    }
    let base: Vec<AlgNum> = result
        .cad
        .levels
        .get(1)
        .map(|l| {
            l.iter()
                .filter(|c| c.index[0] % 2 == 0)
                .map(|c| c.sample.coords()[0].clone())
                .collect()
        })
        .unwrap_or_default();
    let lo = base.first().map_or(-1.0, AlgNum::to_f64).floor() as i64 - 1;
    let hi = base.last().map_or(1.0, AlgNum::to_f64).ceil() as i64 + 1;
    let steps = steps.max(1);
    let curves = result
        .tracked
        .iter()
        .filter(|p| p.mvar() == Some(1))
        .map(|p| {
            let mut points = Vec::new();
            for k in 0..=steps {
                let x = BigRational::new(
                    (i64::from(steps) * lo + i64::from(k) * (hi - lo)).into(),
                    i64::from(steps).into(),
                );
                let mut s = SamplePoint::from_rationals(std::slice::from_ref(&x));
                if let LiftRoots::Roots(rs) = s.roots(p) {
                    let xf = AlgNum::Rational(x).to_f64();
                    points.extend(rs.iter().map(|r| [xf, r.value.to_f64()]));
                }
            }
            CurveJson {
                poly: p.to_string(),
                points,
            }
        })
        .collect();
    let cells = result
        .cells
        .iter()
        .map(|c| PlotCellJson {
            index: c.index.clone(),
            dim: c.dim(),
            x: c.sample.coords()[0].to_f64(),
            y: c.sample.coords()[1].to_f64(),
            truths: c.truths.clone(),
        })
        .collect();
    Ok(PlotData {
        schema: PLOT_SCHEMA,
        mode: result.mode.name(),
        vars: order.names().to_vec(),
        base_roots: base.iter().map(NumJson::from).collect(),
        curves,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run, Mode, Options};
    use crate::formula::{EcStrategy, FormulaList};
    use crate::poly::VarOrder;

    fn circle(mode: Mode) -> CadResult {
        let o = VarOrder::new(["x", "y"]).unwrap();
        let mut fl = FormulaList::parse(&["x^2 + y^2 - 1 = 0"], &o).unwrap();
        fl.designate(&EcStrategy::Manual(vec![])).unwrap();
        run(&fl, mode, &Options::default()).unwrap()
    }

    #[test]
    fn circle_has_two_vertical_lines() {
        let p = plot2d(&circle(Mode::Tticad), 40).unwrap();
        assert_eq!(
            p.base_roots,
            vec![
                NumJson::Rational {
                    num: "-1".into(),
                    den: "1".into()
                },
                NumJson::Rational {
                    num: "1".into(),
                    den: "1".into()
                },
            ]
        );
        assert_eq!(p.cells.len(), 13);
        for [x, y] in &p.curves[0].points {
            assert!((x * x + y * y - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn cell_dump_fields() {
        let r = circle(Mode::Full);
        let d = cells(&r);
        assert_eq!(d.cells.len(), 13);
        let c = &d.cells[5];
        assert_eq!(c.index, vec![3, 2]);
        assert_eq!(c.dim, 1);
        assert_eq!(c.signs[0].sign, 0);
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.contains(r#""schema":"tticad-cells/1""#));
        assert_eq!(json, serde_json::to_string(&cells(&circle(Mode::Full))).unwrap());
    }

    #[test]
    fn algebraic_encoding() {
        let r = &AlgNum::roots_of(&[(-2).into(), 0.into(), 1.into()])[1];
        match NumJson::from(r) {
            NumJson::Algebraic { defpoly, approx, .. } => {
                assert_eq!(defpoly, ["-2", "0", "1"]);
                assert!((approx - 2f64.sqrt()).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn projection_levels_carry_provenance() {
        let d = projection(&circle(Mode::Full));
        assert_eq!(d.levels.len(), 2);
        assert_eq!(d.levels[1].polys[0].provenance, Provenance::Input);
        assert_eq!(d.levels[0].basis, ["x^2 - 1"]);
    }
}
