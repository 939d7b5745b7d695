use std::time::Instant;

use axialforge::analysis::analyze;
use axialforge::config::catalog_axets;
use axialforge::engine::{construct, Budget};

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).collect();
    for (g, ax) in catalog_axets(None).unwrap() {
        if !filter.is_empty() && !filter.contains(&g.name) {
            continue;
        }
        {
            for s in &ax.shapes {
                if let Ok(f) = std::env::var("AF_SHAPE") {
                    if s.name() != f {
                        continue;
                    }
                }
                let t = Instant::now();
                let mut b = Budget::default();
                if let Ok(x) = std::env::var("AF_EXP_DIM") {
                    b.max_expanded_dim = x.parse().unwrap();
                    b.max_dim = b.max_expanded_dim;
                }
                let c = construct(s, &b);
                let built = t.elapsed();
                let info = c.algebra.as_ref().map_or(String::new(), |a| {
                    let r = analyze(a, &c.axes, s);
                    let quot = r
                        .radical_quotient
                        .as_ref()
                        .map_or(String::new(), |q| format!(" quotient {} {}", q.dim, q.form_kind.as_str()));
                    format!(
                        " [{}] m {:?} form {} free {} prim {} shape {}{}",
                        s.component_name(),
                        r.m_closure,
                        r.form_kind.as_str(),
                        r.form.as_ref().map_or(0, |f| f.free_dims),
                        r.primitive,
                        r.shape_verified,
                        quot
                    )
                });
                println!(
                    "{} {} {}: {:?} dim {} exp {} peak {} ({:.2?}, total {:.2?}){}",
                    g.name,
                    ax.pattern_id(),
                    s.name(),
                    c.verdict,
                    c.state.dim,
                    c.expansions,
                    c.peak_dim,
                    built,
                    t.elapsed(),
                    info
                );
            }
        }
    }
}
