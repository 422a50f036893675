//! Run the Ekedahl-Oort truncation algorithm on a few extended affine Weyl
//! elements and replay the sigma-conjugation certificate it returns.
//!
//! Run with `cargo run --example eo_truncation`.

use newton_strata::affine::{self, ExtAffElt};
use newton_strata::root_datum::parse_group_spec;
use newton_strata::weyl;

fn main() {
    let g = parse_group_spec("gl(n=3,d=1)").unwrap();
    for literal in ["1,0,0|id", "0,1,0|s2 s1", "1,1,0|s1", "0,0,0|s1 s2"] {
        let x = affine::parse_element(&g, literal).unwrap();
        let r = affine::eo_truncation(&g, &x).unwrap();
        let word = weyl::reduced_word(&g, &r.w);
        let word_str: Vec<&str> = word.iter().map(|&j| g.simple_name(j)).collect();
        println!(
            "{literal:>14} -> w = {:?} (length {}), mu = {}, {} rounds, sigma-straight: {}",
            word_str,
            weyl::length_finite(&g, &r.w),
            g.format_coords_int(&r.mu.coords),
            r.iterations,
            affine::is_sigma_straight(&g, &x),
        );

        // replay the certificate: conjugating by the recorded elements
        // turns x into u_n b_n tau_mu exactly
        let mut y = x.clone();
        for c in &r.certificate {
            y = affine::sigma_conjugate(&g, &y, c);
        }
        let (tau, _) = affine::tau_mu(&g, &r.mu).unwrap();
        let expected = affine::multiply(
            &g,
            &ExtAffElt {
                lambda: g.zero_cocharacter(),
                w: weyl::multiply(&g, &r.w, &r.finite_remainder).unwrap(),
            },
            &tau,
        )
        .unwrap();
        assert_eq!(y, expected);
        println!("{:>14}    certificate of {} conjugations replays exactly", "", r.certificate.len());
    }

    // fundamental elements are sigma-straight; p^mu is B-fundamental
    let dom = affine::parse_element(&g, "2,1,0|id").unwrap();
    let witness = affine::is_fundamental(&g, &dom).unwrap();
    println!(
        "p^(2,1,0) is fundamental for J = {:?} (conjugator length {})",
        witness.j_set,
        weyl::length_finite(&g, &witness.conjugator)
    );
}
