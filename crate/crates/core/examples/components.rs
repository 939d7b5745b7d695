fn main() {
    let filter: Vec<String> = std::env::args().skip(1).collect();
    for (g, a) in axialforge::config::catalog_axets(None).unwrap() {
        if !filter.is_empty() && !filter.contains(&g.name) {
            continue;
        }
        {
            for s in &a.shapes {
                println!("{} {} {} => {}", g.name, a.pattern_id(), s.name(), s.component_name());
            }
        }
    }
}
