//! Tower and gradient CSV formats. Comma-separated, header row, no
//! quoting: every token is alphanumeric (or `na` for an absent face
//! size). Ratios are rendered with exactly six decimal places.

use smallcover::gradient::{format_ratio, AtkinsonReport, GradientReport, TowerSummary};
use smallcover::hvector;
use smallcover::tower::TowerState;
use smallcover::{Error, Result};

pub const TOWER_HEADER: &str = "j,V,E,F,k,index,h1";

/// One row per level: j, V, E, F, k, index, h1.
pub fn tower_csv(t: &TowerState) -> Result<String> {
    let mut out = String::from(TOWER_HEADER);
    out.push('\n');
    for (j, level) in t.levels.iter().enumerate() {
        let p = &level.polytope;
        let k = match level.face_size {
            Some(k) => k.to_string(),
            None => "na".to_string(),
        };
        let h1 = hvector::h1_closed_form(p)?;
        out.push_str(&format!(
            "{j},{},{},{},{k},{},{h1}\n",
            p.vertex_count(),
            p.edge_count(),
            p.facet_count(),
            level.index_over_base,
        ));
    }
    Ok(out)
}

/// Re-ingest a tower CSV into the level data needed for gradient
/// arithmetic, cross-checking Euler characteristic and the h1 column.
pub fn parse_tower_csv(text: &str) -> Result<TowerSummary> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if header.trim() != TOWER_HEADER {
        return Err(Error::Domain(format!(
            "expected tower CSV header `{TOWER_HEADER}`, got `{header}`"
        )));
    }
    let mut vertices = Vec::new();
    let mut face_sizes = Vec::new();
    let mut indices = Vec::new();
    for (row, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(Error::Domain(format!(
                "tower CSV row {} has {} fields, expected 7",
                row + 2,
                fields.len()
            )));
        }
        let parse = |s: &str, what: &str| -> Result<i64> {
            s.trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad {what} `{s}` in tower CSV row {}", row + 2)))
        };
        let j = parse(fields[0], "level")?;
        if j != row as i64 {
            return Err(Error::Domain(format!(
                "tower CSV rows out of order: expected level {}, got {j}",
                row
            )));
        }
        let v = parse(fields[1], "vertex count")?;
        let e = parse(fields[2], "edge count")?;
        let f = parse(fields[3], "facet count")?;
        if v - e + f != 2 {
            return Err(Error::Domain(format!(
                "tower CSV row {}: V - E + F = {} != 2",
                row + 2,
                v - e + f
            )));
        }
        let k = match fields[4].trim() {
            "na" => None,
            s => Some(parse(s, "face size")? as u64),
        };
        let index = parse(fields[5], "index")? as u64;
        let h1 = parse(fields[6], "h1")?;
        if h1 != v / 2 - 1 {
            return Err(Error::Domain(format!(
                "tower CSV row {}: h1 = {h1} but V/2 - 1 = {}",
                row + 2,
                v / 2 - 1
            )));
        }
        vertices.push(v as u64);
        face_sizes.push(k);
        indices.push(index);
    }
    TowerSummary::new(vertices, face_sizes, indices)
}

pub fn gradient_header(with_rs: bool) -> String {
    let mut h = String::from("j,index,V,b1_lower,ratio_lo,ratio_hi,commensurable_b1,atkinson_pass");
    if with_rs {
        h.push_str(",rs_upper");
    }
    h
}

/// Gradient report rows, with the Atkinson verdict column filled from
/// an optional volume-growth report (`na` without one).
pub fn gradient_csv(report: &GradientReport, atkinson: Option<&AtkinsonReport>) -> String {
    let with_rs = report.rows.iter().any(|r| r.rs_upper.is_some());
    let mut out = gradient_header(with_rs);
    out.push('\n');
    for row in &report.rows {
        let verdict = match atkinson {
            None => "na".to_string(),
            Some(a) if !a.precondition_ok => "precondition".to_string(),
            Some(a) => {
                if a.rows[row.level].pass {
                    "pass".to_string()
                } else {
                    "fail".to_string()
                }
            }
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{verdict}",
            row.level,
            row.index,
            row.vertices,
            row.b1_lower,
            format_ratio(row.ratio_lo),
            format_ratio(row.ratio_hi),
            row.commensurable_b1,
        ));
        if let Some(rs) = row.rs_upper {
            out.push_str(&format!(",{rs}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use smallcover::cover::find_orientable;
    use smallcover::polytope::builtin;
    use smallcover::tower::{build_tower, Strategy};

    #[test]
    fn tower_csv_round_trip() {
        let dode = builtin("dodecahedron").unwrap();
        let c = find_orientable(&dode).unwrap().unwrap();
        let t = build_tower(&dode, &c, Strategy::MinVertexFace, 4).unwrap();
        let text = tower_csv(&t).unwrap();
        let summary = parse_tower_csv(&text).unwrap();
        assert_eq!(summary.vertices, vec![20, 30, 50, 90, 170]);
        assert_eq!(summary.face_sizes, vec![Some(5); 5]);
        assert_eq!(summary.indices, vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn parse_rejects_corrupt_rows() {
        assert!(parse_tower_csv("nope\n").is_err());
        // broken Euler relation
        let bad = format!("{TOWER_HEADER}\n0,20,30,13,5,1,9\n");
        assert!(parse_tower_csv(&bad).is_err());
        // h1 column inconsistent with V
        let bad = format!("{TOWER_HEADER}\n0,20,30,12,5,1,8\n");
        assert!(parse_tower_csv(&bad).is_err());
    }
}
