//! The benchmark harness: per instance, the 3/2-approximation on the input
//! and lifted from the kernel, with the table columns as CSV.
//!
//! CSV header: `name,V,VR,R,b,c,wW,Vk,Rk,wWk,ms,rV,rVR,rR,rW[,rOpt]`. The
//! `ms` column is kernelization wall time without the metric closure.
//! Ratios have six decimals and are blank when undefined.

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rppk_core::kernel::KernelOptions;
use rppk_core::ratio::Rational;

use crate::pipeline::{
    check_tour, kernelize_prepared, lifted_approx, prepare, read_instance, solve, stats, Method,
};

pub const OPTIMA_FILE: &str = "optima.csv";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub name: String,
    pub v: usize,
    pub vr: usize,
    pub r: usize,
    pub b: usize,
    pub c: usize,
    pub w: u64,
    pub vk: usize,
    pub rk: usize,
    pub wk: u64,
    pub ms: u128,
    pub opt: Option<u64>,
}

fn ratio(a: f64, b: f64) -> Option<f64> {
    (b != 0.0).then(|| a / b)
}

impl BenchRecord {
    pub fn r_v(&self) -> Option<f64> {
        ratio(self.vk as f64, self.v as f64)
    }
    pub fn r_vr(&self) -> Option<f64> {
        ratio(self.vk as f64, self.vr as f64)
    }
    pub fn r_r(&self) -> Option<f64> {
        ratio(self.rk as f64, self.r as f64)
    }
    pub fn r_w(&self) -> Option<f64> {
        ratio(self.wk as f64, self.w as f64)
    }
    pub fn r_opt(&self) -> Option<f64> {
        self.opt.and_then(|o| ratio(self.wk as f64, o as f64))
    }
}

/// One CSV row: a record, or the reason the instance failed.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub name: String,
    pub result: Result<BenchRecord, String>,
}

/// Runs the pipeline on one instance. Both tours are checked on the
/// original graph.
pub fn bench_instance(
    name: &str,
    inst: &rppk_core::RppInstance,
    eps: Rational,
    options: KernelOptions,
    opt: Option<u64>,
) -> Result<BenchRecord, String> {
    let st = stats(inst);
    let mut rec = BenchRecord {
        name: name.to_string(),
        v: st.vertices,
        vr: st.required_vertices,
        r: st.required_edges,
        b: st.b,
        c: st.c,
        w: 0,
        vk: 0,
        rk: 0,
        wk: 0,
        ms: 0,
        opt,
    };
    let Some(prep) = prepare(inst).map_err(|e| e.to_string())? else {
        return Ok(rec);
    };
    let direct = solve(&prep, Method::Approx32).map_err(|e| e.to_string())?;
    check_tour(inst, &direct).map_err(|e| format!("direct tour: {e}"))?;
    let k = kernelize_prepared(&prep, eps, options).map_err(|e| e.to_string())?;
    let lifted = lifted_approx(&prep, &k.kernel).map_err(|e| e.to_string())?;
    check_tour(inst, &lifted).map_err(|e| format!("lifted tour: {e}"))?;
    rec.w = direct.weight();
    rec.vk = k.kernel.instance.vertex_count();
    rec.rk = k.kernel.instance.required().len();
    rec.wk = lifted.weight();
    rec.ms = k.elapsed.as_millis();
    Ok(rec)
}

/// Reads `name,opt` lines; a header line is skipped.
pub fn read_optima(path: &Path) -> Result<HashMap<String, u64>, String> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(|e| e.to_string())?;
    let mut out = HashMap::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        if rec.len() < 2 {
            continue;
        }
        if let Ok(v) = rec[1].trim().parse::<u64>() {
            out.insert(rec[0].trim().to_string(), v);
        }
    }
    Ok(out)
}

/// Instance files of a directory in name order, skipping hidden files and
/// the optima sidecar.
pub fn instance_files(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .filter(|p| {
            let n = p
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            !n.starts_with('.') && n != OPTIMA_FILE
        })
        .collect();
    files.sort();
    Ok(files)
}

/// Benchmarks every instance file in `dir` in parallel; rows come back in
/// file name order.
pub fn run_bench(
    dir: &Path,
    eps: Rational,
    options: KernelOptions,
    optima: &HashMap<String, u64>,
) -> std::io::Result<Vec<BenchRow>> {
    let files = instance_files(dir)?;
    Ok(files
        .par_iter()
        .map(|path| match read_instance(path) {
            Ok(loaded) => {
                let opt = optima.get(&loaded.name).copied();
                let result = bench_instance(&loaded.name, &loaded.instance, eps, options, opt);
                BenchRow {
                    name: loaded.name,
                    result,
                }
            }
            Err(e) => BenchRow {
                name: path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default(),
                result: Err(e.to_string()),
            },
        })
        .collect())
}

fn fmt_ratio(r: Option<f64>) -> String {
    r.map(|x| format!("{x:.6}")).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[BenchRow], with_opt: bool, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![
        "name", "V", "VR", "R", "b", "c", "wW", "Vk", "Rk", "wWk", "ms", "rV", "rVR", "rR", "rW",
    ];
    if with_opt {
        header.push("rOpt");
    }
    w.write_record(&header)?;
    for row in rows {
        let mut fields = vec![row.name.clone()];
        match &row.result {
            Ok(r) => {
                fields.extend([r.v, r.vr, r.r, r.b, r.c].map(|x| x.to_string()));
                fields.push(r.w.to_string());
                fields.extend([r.vk, r.rk].map(|x| x.to_string()));
                fields.push(r.wk.to_string());
                fields.push(r.ms.to_string());
                fields.extend([r.r_v(), r.r_vr(), r.r_r(), r.r_w()].map(fmt_ratio));
                if with_opt {
                    fields.push(fmt_ratio(r.r_opt()));
                }
            }
            Err(_) => fields.resize(header.len(), String::new()),
        }
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

/// Minimum, quartiles and maximum with linear interpolation between order
/// statistics.
pub fn quartiles(values: &[f64]) -> Option<[f64; 5]> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let at = |q: f64| {
        let pos = q * (v.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
    };
    Some([v[0], at(0.25), at(0.5), at(0.75), v[v.len() - 1]])
}

/// Instance family: the name up to the first `-` or `_`, lower-cased.
pub fn family(name: &str) -> String {
    name.split(['-', '_'])
        .next()
        .unwrap_or(name)
        .to_ascii_lowercase()
}

/// Per family, quartiles of |V'|/|V| and |V'|/|V(R)| as CSV
/// `family,ratio,n,min,q1,median,q3,max`.
pub fn write_quartiles<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut groups: std::collections::BTreeMap<String, (Vec<f64>, Vec<f64>)> = Default::default();
    for r in rows.iter().filter_map(|r| r.result.as_ref().ok()) {
        let g = groups.entry(family(&r.name)).or_default();
        g.0.extend(r.r_v());
        g.1.extend(r.r_vr());
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["family", "ratio", "n", "min", "q1", "median", "q3", "max"])?;
    for (fam, (rv, rvr)) in &groups {
        for (label, vals) in [("rV", rv), ("rVR", rvr)] {
            if let Some(q) = quartiles(vals) {
                let mut rec = vec![fam.clone(), label.to_string(), vals.len().to_string()];
                rec.extend(q.iter().map(|x| format!("{x:.6}")));
                w.write_record(&rec)?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartiles_interpolate() {
        assert_eq!(quartiles(&[]), None);
        assert_eq!(quartiles(&[3.0]), Some([3.0; 5]));
        assert_eq!(
            quartiles(&[4.0, 1.0, 3.0, 2.0, 5.0]),
            Some([1.0, 2.0, 3.0, 4.0, 5.0])
        );
        assert_eq!(quartiles(&[1.0, 2.0]).unwrap()[1], 1.25);
    }

    #[test]
    fn families() {
        assert_eq!(family("alba-0.3-1"), "alba");
        assert_eq!(family("ALBA_3_1"), "alba");
        assert_eq!(family("berlin"), "berlin");
    }

    #[test]
    fn csv_layout() {
        let rec = BenchRecord {
            name: "x".into(),
            v: 4,
            vr: 2,
            r: 1,
            b: 2,
            c: 1,
            w: 6,
            vk: 2,
            rk: 1,
            wk: 6,
            ms: 0,
            opt: None,
        };
        let rows = vec![
            BenchRow {
                name: "x".into(),
                result: Ok(rec),
            },
            BenchRow {
                name: "bad".into(),
                result: Err("nope".into()),
            },
        ];
        let mut buf = Vec::new();
        write_csv(&rows, true, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "name,V,VR,R,b,c,wW,Vk,Rk,wWk,ms,rV,rVR,rR,rW,rOpt\n\
             x,4,2,1,2,1,6,2,1,6,0,0.500000,1.000000,1.000000,1.000000,\n\
             bad,,,,,,,,,,,,,,,\n"
        );
    }
}
