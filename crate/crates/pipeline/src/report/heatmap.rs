use std::fmt::Write as _;

use fastinf_core::epidemic::TimePoint;
use fastinf_core::evaluation::{AggregateCell, EvaluationGrid, PRECISION_FLOOR};
use fastinf_core::Metric;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Channel {
    Correlation,
    Precision,
}

impl Channel {
    pub fn id(self) -> &'static str {
        match self {
            Channel::Correlation => "r",
            Channel::Precision => "precision",
        }
    }
}

const DARK_RED: (f64, f64, f64) = (103.0, 0.0, 31.0);
const WHITE: (f64, f64, f64) = (255.0, 255.0, 255.0);
const DARK_BLUE: (f64, f64, f64) = (5.0, 48.0, 97.0);
const MISSING: &str = "#bdbdbd";
const BLACKOUT: &str = "#000000";

/// Diverging red-white-blue colour for a normalized value, anchored at 0,
/// 0.5 and 1 and clamped outside.
pub fn diverging_color(value: f64) -> String {
    let v = value.clamp(0.0, 1.0);
    let (from, to, f) = if v <= 0.5 {
        (DARK_RED, WHITE, v / 0.5)
    } else {
        (WHITE, DARK_BLUE, (v - 0.5) / 0.5)
    };
    let mix = |a: f64, b: f64| (a + (b - a) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(from.0, to.0), mix(from.1, to.1), mix(from.2, to.2))
}

/// A metrics-by-times matrix ready for drawing.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatmapData {
    pub title: String,
    pub rows: Vec<Metric>,
    pub columns: Vec<TimePoint>,
    /// `values[row][column]`.
    pub values: Vec<Vec<Option<f64>>>,
    /// Columns drawn black whatever their values.
    pub blackout: Vec<bool>,
}

impl HeatmapData {
    /// One spreading rate of one dataset grid.
    pub fn from_grid(grid: &EvaluationGrid<f64>, lambda_ratio: f64, channel: Channel) -> Self {
        let cells: Vec<_> = grid.cells.iter().filter(|c| c.lambda_ratio == lambda_ratio).collect();
        let rows = ordered_unique(cells.iter().map(|c| c.metric));
        let columns = ordered_unique(cells.iter().map(|c| c.time));
        let values = rows
            .iter()
            .map(|&m| {
                columns
                    .iter()
                    .map(|&t| {
                        let c = cells.iter().find(|c| c.metric == m && c.time == t)?;
                        match channel {
                            Channel::Correlation => c.normalized_r,
                            Channel::Precision => c.normalized_precision,
                        }
                    })
                    .collect()
            })
            .collect();
        let blackout = columns
            .iter()
            .map(|&t| channel == Channel::Precision && !grid.any_precision_above(lambda_ratio, t, PRECISION_FLOOR))
            .collect();
        HeatmapData {
            title: format!("{} {} lambda/lambda_c={}", grid.dataset, channel.id(), lambda_ratio),
            rows,
            columns,
            values,
            blackout,
        }
    }

    pub fn from_aggregate(cells: &[AggregateCell<f64>], lambda_ratio: f64, channel: Channel) -> Self {
        let cells: Vec<_> = cells.iter().filter(|c| c.lambda_ratio == lambda_ratio).collect();
        let rows = ordered_unique(cells.iter().map(|c| c.metric));
        let columns = ordered_unique(cells.iter().map(|c| c.time));
        let values = rows
            .iter()
            .map(|&m| {
                columns
                    .iter()
                    .map(|&t| {
                        let c = cells.iter().find(|c| c.metric == m && c.time == t)?;
                        match channel {
                            Channel::Correlation => c.mean_normalized_r,
                            Channel::Precision => c.mean_normalized_precision,
                        }
                    })
                    .collect()
            })
            .collect();
        HeatmapData {
            title: format!("mean relative {} lambda/lambda_c={}", channel.id(), lambda_ratio),
            blackout: vec![false; columns.len()],
            rows,
            columns,
            values,
        }
    }

    pub fn to_svg(&self) -> String {
        const CELL: usize = 18;
        const LEFT: usize = 110;
        const TOP: usize = 40;
        const BOTTOM: usize = 30;
        let width = LEFT + CELL * self.columns.len() + 20;
        let height = TOP + CELL * self.rows.len() + BOTTOM;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="sans-serif" font-size="10">"#
        );
        let _ = writeln!(s, r#"<text x="{LEFT}" y="16" font-size="12">{}</text>"#, escape(&self.title));
        for (r, metric) in self.rows.iter().enumerate() {
            let y = TOP + r * CELL;
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
                LEFT - 4,
                y + CELL * 2 / 3,
                metric.id()
            );
            for (c, value) in self.values[r].iter().enumerate() {
                let fill = if self.blackout[c] {
                    BLACKOUT.to_string()
                } else {
                    value.map_or_else(|| MISSING.to_string(), diverging_color)
                };
                let _ = writeln!(
                    s,
                    r#"<rect x="{}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}"/>"#,
                    LEFT + c * CELL
                );
            }
        }
        let label_y = TOP + self.rows.len() * CELL + 14;
        for (c, t) in self.columns.iter().enumerate() {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{label_y}" text-anchor="middle">{}</text>"#,
                LEFT + c * CELL + CELL / 2,
                t
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn ordered_unique<T: Ord + Copy>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut v: Vec<T> = items.collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use fastinf_core::evaluation::EvaluationCell;

    #[test]
    fn anchors() {
        assert_eq!(diverging_color(0.0), "#67001f");
        assert_eq!(diverging_color(0.5), "#ffffff");
        assert_eq!(diverging_color(1.0), "#053061");
        assert_eq!(diverging_color(-3.0), "#67001f");
        assert_eq!(diverging_color(1.2), "#053061");
    }

    fn cell(metric: Metric, t: u32, nr: f64, p: f64) -> EvaluationCell<f64> {
        EvaluationCell {
            metric,
            lambda_ratio: 1.0,
            time: TimePoint::Step(t),
            r: Some(nr),
            precision: Some(p),
            normalized_r: Some(nr),
            normalized_precision: Some(p),
        }
    }

    #[test]
    fn best_row_is_dark_blue_and_low_precision_column_black() {
        let grid = EvaluationGrid {
            dataset: "toy".into(),
            cells: vec![
                cell(Metric::Degree, 1, 1.0, 0.05),
                cell(Metric::Degree, 2, 1.0, 1.0),
                cell(Metric::KCore, 1, 0.5, 0.02),
                cell(Metric::KCore, 2, 0.5, 0.5),
            ],
        };
        let r = HeatmapData::from_grid(&grid, 1.0, Channel::Correlation);
        assert_eq!(r.rows, vec![Metric::Degree, Metric::KCore]);
        let svg = r.to_svg();
        assert_eq!(svg.matches("#053061").count(), 2);
        assert_eq!(svg.matches("#ffffff").count(), 2);

        let p = HeatmapData::from_grid(&grid, 1.0, Channel::Precision);
        assert_eq!(p.blackout, vec![true, false]);
        assert_eq!(p.to_svg().matches(BLACKOUT).count(), 2);
    }
}
