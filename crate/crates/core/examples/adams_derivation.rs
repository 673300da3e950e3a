//! Builds xi_2 and xi_3 from ch(xi_1) with psi^2 and prints their images under Phi.

use std::collections::BTreeMap;

use gauge_gamma::chern::{adams, phi_image, ChernVector, ClassRecipe, LinearTerm, RecipeStep};
use gauge_gamma::Prime;

fn main() -> gauge_gamma::Result<()> {
    let xi1 = ChernVector::from_pairs([
        (26, "2*3^2*7/11!"),
        (38, "2^2*5*7*13/17!"),
        (50, "-2*3*7*11*19*199/(5*23!)"),
        (62, "2*5^3*7*11*13*61/29!"),
    ])?;
    println!("psi^2(xi_1) = {}", adams(&xi1, 2));

    let step = |name: &str, source: &str, scale: &str, weight: &str| {
        vec![
            RecipeStep::Adams {
                name: format!("psi2_{source}"),
                source: source.into(),
                k: 2,
            },
            RecipeStep::Linear {
                name: name.into(),
                terms: vec![
                    LinearTerm {
                        coeff: format!("1/({scale})").parse().unwrap(),
                        class: format!("psi2_{source}"),
                    },
                    LinearTerm {
                        coeff: format!("-{weight}/({scale})").parse().unwrap(),
                        class: source.into(),
                    },
                ],
            },
        ]
    };
    let mut steps = vec![RecipeStep::Base { name: "xi1".into() }];
    steps.extend(step("xi2", "xi1", "2^13*3^2", "2^13"));
    steps.extend(step("xi3", "xi2", "2^19*3^2*13", "2^19"));
    steps.push(RecipeStep::Pinch {
        name: "xi4".into(),
        degree: 62,
    });

    let env = BTreeMap::from([("xi1".to_string(), xi1)]);
    let built = ClassRecipe::new(steps).evaluate(&env)?;
    let p = Prime::new(7)?;
    for name in ["xi1", "xi2", "xi3", "xi4"] {
        let x = &built[name];
        println!("ch({name}) = {x}");
        println!(
            "  Phi = {:?}",
            phi_image(x, 25, p, &[50, 62])?
                .entries()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        );
    }
    Ok(())
}
