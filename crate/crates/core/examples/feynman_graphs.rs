//! The graph catalog: 1PI checks, divergent subgraphs, quotients, coproducts.

use renorm::graphs::{divergent_subgraphs, quotient, Catalog, GraphInstance};
use renorm::hopf::{coproduct_generator, HopfInstance};

fn main() -> renorm::Result<()> {
    let catalog = Catalog::builtin();
    for (name, g) in catalog.iter() {
        println!(
            "{name:<14} loops {}  legs {}  ω {:>2}  1PI {}",
            g.loops(),
            g.external_legs(),
            g.superficial_degree(),
            g.is_one_pi()
        );
    }

    let nested = catalog.get("nested2")?;
    println!("\ndivergent subgraphs of nested2:");
    for s in divergent_subgraphs(nested)? {
        println!("  edges {:?} -> quotient {}", s.edges, quotient(nested, &s.edges)?);
    }

    let inst = GraphInstance::builtin();
    println!(
        "\n{} generators up to {} loops",
        inst.generators(3).len(),
        inst.max_loops()
    );
    for spec in ["bubble{s1}", "nested2", "chain3", "disjoint3"] {
        let g = inst.generator(spec)?;
        println!("Δ({g}) = {}", coproduct_generator(&inst, &g));
    }
    Ok(())
}
