use std::sync::Arc;

fn main() {
    for (g, pats) in axialforge::permgrp::catalog().unwrap() {
        let g = Arc::new(g);
        let t = std::time::Instant::now();
        let ax = axialforge::config::enumerate_axets(&g);
        let got: Vec<String> = ax.iter().map(|a| format!("{}:{}", a.pattern_id(), a.shapes.len())).collect();
        println!("{} {:?} want {:?} ({:?})", g.name, got, pats, t.elapsed());
    }
}
