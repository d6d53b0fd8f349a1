use pecr::multiview::{bundled_dataset, load_csv, run_cv, ExperimentConfig, Method, ViewProtocol};

fn main() -> pecr::error::Result<()> {
    let names: Vec<String> = std::env::args().skip(1).collect();
    let names = if names.is_empty() {
        pecr::multiview::protocol::BUILTIN_PROTOCOLS
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        names
    };
    let mut config = ExperimentConfig::default();
    if let Ok(seed) = std::env::var("SEED") {
        config.seed = seed.parse().unwrap();
    }
    if let Ok(borrow) = std::env::var("BORROW") {
        config.borrow = borrow.parse()?;
    }
    for name in names {
        let protocol = ViewProtocol::builtin(&name)?;
        let table = load_csv(bundled_dataset(&protocol.dataset))?;
        let start = std::time::Instant::now();
        let reports = run_cv(&table, &protocol, &Method::comparison_set(), &config)?;
        println!("{name} ({:.1}s)", start.elapsed().as_secs_f64());
        for r in reports {
            println!(
                "  {:24} {:.4} ± {:.4}  failures {}",
                r.rule, r.mean, r.std, r.failures
            );
        }
    }
    Ok(())
}
