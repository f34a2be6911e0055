use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use cutmet_core::ridge::{build_complement, build_gamma, build_ridge_graph, find_triangles};
use cutmet_core::Graph;

use crate::config::RunConfig;

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error("no export directory configured")]
    NoDirectory,
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("building graphs for n = {n}: {source}")]
    Build {
        n: usize,
        source: cutmet_core::Error,
    },
}

fn write(path: PathBuf, contents: &str, written: &mut Vec<PathBuf>) -> Result<(), ExportError> {
    fs::write(&path, contents).map_err(|source| ExportError::Io {
        path: path.clone(),
        source,
    })?;
    written.push(path);
    Ok(())
}

fn write_graph(
    dir: &Path,
    stem: &str,
    g: &Graph,
    written: &mut Vec<PathBuf>,
) -> Result<serde_json::Value, ExportError> {
    let g6 = format!("{stem}.g6");
    let edges = format!("{stem}.edges");
    write(dir.join(&g6), &format!("{}\n", g.to_graph6()), written)?;
    write(dir.join(&edges), &g.to_edge_list(), written)?;
    Ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "graph6": g6,
        "edge_list": edges,
    }))
}

/// Writes G_n, its complement and the Triangle graph for one `n`, with label
/// files and a manifest. Returns the paths written.
pub fn export_n(dir: &Path, n: usize) -> Result<Vec<PathBuf>, ExportError> {
    let build = |source| ExportError::Build { n, source };
    let mut written = Vec::new();
    let g = build_ridge_graph(n).map_err(build)?;
    let gbar = build_complement(n).map_err(build)?;

    let mut labels = String::from("# vertex i j k facet\n");
    for (v, f) in g.facets.iter().enumerate() {
        let (i, j) = f.apex();
        let k = f.third();
        let _ = writeln!(labels, "{v} {i} {j} {k} T({i}{j};{k})");
    }
    let facet_labels = format!("facets{n}.labels");
    write(dir.join(&facet_labels), &labels, &mut written)?;

    let mut graphs = serde_json::Map::new();
    let mut g_entry = write_graph(dir, &format!("g{n}"), &g.graph, &mut written)?;
    g_entry["labels"] = json!(facet_labels);
    graphs.insert("ridge".into(), g_entry);
    let mut gbar_entry = write_graph(dir, &format!("gbar{n}"), &gbar.graph, &mut written)?;
    gbar_entry["labels"] = json!(facet_labels);
    graphs.insert("complement".into(), gbar_entry);

    let mut omitted = Vec::new();
    if n >= 5 {
        let triangles = find_triangles(&gbar).map_err(build)?;
        let gamma = build_gamma(&gbar, &triangles).map_err(build)?;
        let mut labels = String::from("# vertex a b c\n");
        for (v, t) in gamma.triangles.iter().enumerate() {
            let [a, b, c] = t.support;
            let _ = writeln!(labels, "{v} {a} {b} {c}");
        }
        let gamma_labels = format!("gamma{n}.labels");
        write(dir.join(&gamma_labels), &labels, &mut written)?;
        let mut entry = write_graph(dir, &format!("gamma{n}"), &gamma.graph, &mut written)?;
        entry["labels"] = json!(gamma_labels);
        graphs.insert("triangle".into(), entry);
    } else {
        omitted.push(json!({ "graph": "triangle", "reason": "Triangles are degenerate at n = 4" }));
    }

    let manifest = json!({
        "n": n,
        "graphs": graphs,
        "omitted": omitted,
        "edge_list_format": "one 'u v' pair per line, 0-based vertices",
    });
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    write(dir.join(format!("manifest{n}.json")), &text, &mut written)?;
    Ok(written)
}

/// Exports every `n` in the configured range into `config.export_dir`.
pub fn export_graphs(config: &RunConfig) -> Result<Vec<PathBuf>, ExportError> {
    let dir = config
        .export_dir
        .as_deref()
        .ok_or(ExportError::NoDirectory)?;
    fs::create_dir_all(dir).map_err(|source| ExportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut all = Vec::new();
    for n in config.n_values() {
        all.extend(export_n(dir, n)?);
    }
    Ok(all)
}
