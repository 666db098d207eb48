mod common;

use std::sync::Arc;

use common::*;
use halg_core::algcore::{Algebra, AlgebraAutomorphism};
use halg_core::exactlin::{Matrix, SubspaceBasis};
use halg_core::modhom::*;

fn cat(a: &Arc<Algebra>) -> ModuleCategory {
    ModuleCategory::new(a, 0).unwrap()
}

fn dims(ms: &[Module]) -> Vec<usize> {
    let mut d: Vec<usize> = ms.iter().map(Module::dim).collect();
    d.sort();
    d
}

/// Brute-force Hom dimension: all matrices commuting with every basis
/// action, solved through the Kronecker formulation
/// `(I ⊗ ρ_N(b) - ρ_M(b)^T ⊗ I) vec(f) = 0` (column-major `vec`).
fn hom_dim_oracle(m: &Module, n: &Module) -> usize {
    let (dm, dn) = (m.dim(), n.dim());
    if dm * dn == 0 {
        return 0;
    }
    let blocks: Vec<Matrix> = (0..m.algebra().dim())
        .map(|b| {
            let left = Matrix::identity(Q, dm).kronecker(n.action(b));
            let right = m.action(b).transpose().kronecker(&Matrix::identity(Q, dn));
            left.sub(&right)
        })
        .collect();
    let system = Matrix::vstack(Q, dm * dn, &blocks);
    dm * dn - system.rank()
}

#[test]
fn regular_modules() {
    let a = a2();
    let r = regular_module(&a);
    assert_eq!(r.dim(), 3);
    r.check().unwrap();
    let c = cat(&a);
    assert_eq!(c.summand_multiplicities(&r, false).unwrap(), Multiplicities(vec![1, 1]));

    let g = skew(&example_action());
    assert_eq!(regular_module(&g).dim(), 10);

    let e = example();
    let ce = cat(&e);
    assert_eq!(ce.summand_multiplicities(&ce.regular(), false).unwrap(), Multiplicities(vec![1, 1, 1]));
}

#[test]
fn module_validation_rejects_bad_actions() {
    let a = dual_numbers();
    // x acting invertibly violates x² = 0
    let bad = Module::new(&a, 1, vec![Matrix::identity(Q, 1), Matrix::identity(Q, 1)]);
    assert!(matches!(bad, Err(ModError::NotAModule(_))));
    let bad_unit = Module::new(&a, 1, vec![Matrix::zeros(Q, 1, 1), Matrix::zeros(Q, 1, 1)]);
    assert!(matches!(bad_unit, Err(ModError::NotAModule(_))));
    assert!(matches!(Module::new(&a, 1, vec![Matrix::identity(Q, 1)]), Err(ModError::BadModule(_))));
}

#[test]
fn a2_projectives_injectives_simples() {
    let a = a2();
    let c = cat(&a);
    assert_eq!(dims(&c.projective_modules()), vec![1, 2]);
    assert_eq!(dims(c.injectives()), vec![1, 2]);
    assert_eq!(dims(c.simples()), vec![1, 1]);
    for (i, p) in c.projectives().iter().enumerate() {
        p.module.check().unwrap();
        // top P_i ≅ S_i ≅ soc I_i
        let mut expect = vec![0; 2];
        expect[i] = 1;
        assert_eq!(c.top_multiplicities(&p.module).unwrap().0, expect);
        assert_eq!(c.socle_multiplicities(&c.injectives()[i]).unwrap().0, expect);
        assert_eq!(c.top_multiplicities(&c.simples()[i]).unwrap().0, expect);
        c.injectives()[i].check().unwrap();
    }
    // P_1 (dimension 2) is I_2; the simple projective is P_2 = S_2
    let p_big = c.projectives().iter().find(|p| p.module.dim() == 2).unwrap();
    assert!(c.is_injective(&p_big.module).unwrap());
}

#[test]
fn hom_spaces_match_kronecker_oracle() {
    let a = a2();
    let c = cat(&a);
    let mut ms: Vec<Module> = c.simples().to_vec();
    ms.extend(c.projective_modules());
    ms.extend(c.injectives().iter().cloned());
    ms.push(c.regular());
    for m in &ms {
        for n in &ms {
            let basis = hom_space(m, n).unwrap();
            assert_eq!(basis.len(), hom_dim_oracle(m, n));
            assert!(basis.iter().all(ModuleMap::is_homomorphism));
        }
    }
    let s = c.simples();
    assert_eq!(hom_dim(&s[0], &s[0]).unwrap(), 1);
    assert_eq!(hom_dim(&s[0], &s[1]).unwrap(), 0);
    // Hom(P_1, Λ) ≅ e_1 Λ: the only path starting... ending at 1 is e_1
    let p1 = c.projectives().iter().find(|p| p.module.dim() == 2).unwrap();
    assert_eq!(hom_dim(&p1.module, &c.regular()).unwrap(), 1);
}

#[test]
fn hom_space_rejects_mismatched_algebras() {
    let m = regular_module(&a2());
    let n = regular_module(&dual_numbers());
    assert_eq!(hom_space(&m, &n).unwrap_err(), ModError::AlgebraMismatch);
}

#[test]
fn isomorphism_tests_and_certificates() {
    let a = example();
    let c = cat(&a);
    let r = c.regular();
    let v = is_isomorphic(&r, &r, 0).unwrap();
    assert!(v.isomorphic);
    assert!(v.certificate.unwrap().matrix().is_identity());

    let s = c.simples();
    let v = is_isomorphic(&s[0], &s[1], 0).unwrap();
    assert!(!v.isomorphic);
    assert!(matches!(v.evidence, IsoEvidence::Invariant(_)));

    let v = is_isomorphic(&r, &s[0], 0).unwrap();
    assert!(!v.isomorphic);

    // ^σΛ ≅ Λ via x ↦ σ⁻¹(x)
    let act = example_action();
    let sigma = act.image(1);
    let twisted = twist(&regular_module(act.algebra()), sigma).unwrap();
    let v = is_isomorphic(&regular_module(act.algebra()), &twisted, 7).unwrap();
    assert!(v.isomorphic);
    let cert = v.certificate.unwrap();
    assert!(cert.is_isomorphism() && cert.is_homomorphism());
    let direct = ModuleMap::new(&regular_module(act.algebra()), &twisted, sigma.inverse_matrix().clone());
    assert!(direct.is_ok());
}

#[test]
fn covers_and_envelopes() {
    let a = a2();
    let c = cat(&a);
    for p in c.projectives() {
        let cov = c.projective_cover(&p.module).unwrap();
        assert_eq!(cov.module.dim(), p.module.dim());
        assert!(cov.map.is_isomorphism());
    }
    for s in c.simples() {
        let cov = c.projective_cover(s).unwrap();
        assert!(cov.map.is_surjective() && cov.map.is_homomorphism());
        assert_eq!(cov.summands.len(), 1);
        let env = c.injective_envelope(s).unwrap();
        assert!(env.map.is_injective() && env.map.is_homomorphism());
        assert_eq!(env.summands.len(), 1);
    }
    let d = dual_numbers();
    let cd = cat(&d);
    let env = cd.injective_envelope(&cd.simples()[0]).unwrap();
    assert_eq!(env.module.dim(), 2);
    assert!(is_isomorphic(&env.module, &cd.regular(), 0).unwrap().isomorphic);
    assert!(cd.is_projective(&cd.injectives()[0]).unwrap());
}

#[test]
fn resolutions_and_dimensions() {
    let a = a2();
    let c = cat(&a);
    let s1 = c.simples().iter().find(|s| !c.is_projective(s).unwrap()).unwrap().clone();
    assert_eq!(projective_dimension(&c, &s1, 10).unwrap(), HomDim::Finite(1));
    assert_eq!(projective_dimension(&c, &c.regular(), 10).unwrap(), HomDim::Finite(0));
    let inj = minimal_resolution(&c, &c.regular(), Direction::Injective, 10).unwrap();
    assert!(inj.terminated && inj.is_exact());
    assert_eq!(inj.dimension(), HomDim::Finite(1));

    let d = dual_numbers();
    let cd = cat(&d);
    let s = &cd.simples()[0];
    let res = minimal_resolution(&cd, s, Direction::Projective, 10).unwrap();
    assert_eq!(res.dimension(), HomDim::AtLeast(11));
    assert_eq!(res.terms.len(), 11);
    assert!(res.terms.iter().all(|t| t.dim() == 2));
    assert!(res.is_exact());
    assert_eq!(injective_dimension(&cd, &cd.regular(), 10).unwrap(), HomDim::Finite(0));
}

#[test]
fn resolution_serializes_with_multiplicities() {
    let a = a2();
    let c = cat(&a);
    let res = minimal_resolution(&c, &c.simples()[0], Direction::Projective, 10).unwrap();
    let json = serde_json::to_value(&res).unwrap();
    assert_eq!(json["direction"], "projective");
    assert!(json["terminated"].as_bool().unwrap());
    assert!(json["terms"].is_array());
}

#[test]
fn ext_on_a2() {
    let a = a2();
    let c = cat(&a);
    // S_1 sits at the source of the arrow: non-projective
    let i1 = c.simples().iter().position(|s| !c.is_projective(s).unwrap()).unwrap();
    let i2 = 1 - i1;
    let s = c.simples();
    assert_eq!(ext_dim(&c, &s[i1], &s[i2], 1).unwrap(), 1);
    assert_eq!(ext_dim(&c, &s[i2], &s[i1], 1).unwrap(), 0);
    assert_eq!(ext_dim(&c, &s[i1], &s[i1], 0).unwrap(), 1);
    for p in c.projectives() {
        for n in s {
            assert_eq!(&ext_dims(&c, &p.module, n, 4).unwrap()[1..], &[0, 0, 0, 0]);
        }
    }
}

#[test]
fn ext_routes_agree_and_degree_zero_is_hom() {
    for a in [a2(), dual_numbers(), example(), skew(&sign_action())] {
        let c = cat(&a);
        let mut ms: Vec<Module> = c.simples().to_vec();
        ms.extend(c.projective_modules());
        ms.push(c.regular());
        for m in &ms {
            for n in &ms {
                let p = ext_dims(&c, m, n, 3).unwrap();
                let i = ext_dims_via_injective(&c, m, n, 3).unwrap();
                assert_eq!(p, i);
                assert_eq!(p[0], hom_dim(m, n).unwrap());
            }
        }
    }
}

#[test]
fn pd_is_top_nonvanishing_ext_into_simples() {
    for a in [a2(), example(), skew(&example_action())] {
        let c = cat(&a);
        let mut ms: Vec<Module> = c.simples().to_vec();
        ms.extend(c.injectives().iter().cloned());
        for m in &ms {
            let HomDim::Finite(pd) = projective_dimension(&c, m, 10).unwrap() else { continue };
            let top = (0..=pd + 1)
                .filter(|&i| c.simples().iter().any(|s| ext_dim(&c, m, s, i).unwrap() != 0))
                .max()
                .unwrap();
            assert_eq!(top, pd);
        }
    }
}

#[test]
fn duality() {
    let a = example();
    let c = cat(&a);
    let op = c.opposite();
    for m in c.projective_modules().iter().chain(c.simples()) {
        let dm = c.dual(m).unwrap();
        dm.check().unwrap();
        let ddm = op.dual(&dm).unwrap();
        assert_eq!(ddm.actions(), m.actions());
        assert_eq!(c.is_projective(m).unwrap(), op.is_injective(&dm).unwrap());
    }
}

#[test]
fn twist_examples() {
    let act = example_action();
    let a = act.algebra().clone();
    let c = cat(&a);
    let id = AlgebraAutomorphism::identity(&a);
    let sigma = act.image(1);
    for m in c.simples() {
        assert_eq!(twist(m, &id).unwrap().actions(), m.actions());
        let back = twist(&twist(m, sigma).unwrap(), &sigma.inverse()).unwrap();
        assert_eq!(&back, m);
    }
    // the swap exchanges the simples at 2 and 2'
    let s = c.simples();
    let moved: Vec<usize> = (0..3)
        .filter(|&i| !is_isomorphic(&twist(&s[i], sigma).unwrap(), &s[i], 0).unwrap().isomorphic)
        .collect();
    assert_eq!(moved.len(), 2);
    let t = twist(&s[moved[0]], sigma).unwrap();
    assert!(is_isomorphic(&t, &s[moved[1]], 0).unwrap().isomorphic);
}

#[test]
fn induction_and_restriction() {
    for act in [example_action(), sign_action()] {
        let a = act.algebra().clone();
        let g = skew(&act);
        let c = cat(&a);
        let lam = c.regular();
        let f_lam = induce(&lam, &g).unwrap();
        assert_eq!(f_lam.dim(), g.dim());
        assert!(is_isomorphic(&f_lam, &regular_module(&g), 0).unwrap().isomorphic);

        let h_gamma = restrict(&regular_module(&g)).unwrap();
        let free = direct_sum(&a, &vec![lam.clone(); act.order()]).unwrap();
        assert!(is_isomorphic(&h_gamma, &free, 0).unwrap().isomorphic);
        assert!(c.is_projective(&h_gamma).unwrap());

        for m in c.simples().iter().chain(&c.projective_modules()) {
            let hfm = restrict(&induce(m, &g).unwrap()).unwrap();
            let twists: Vec<Module> = act.images().iter().map(|s| twist(m, s).unwrap()).collect();
            let sum = direct_sum(&a, &twists).unwrap();
            assert!(is_isomorphic(&hfm, &sum, 0).unwrap().isomorphic);
            let unit = unit_map(m, &g).unwrap();
            assert!(unit.is_homomorphism());
            assert!(split_mono_section(&unit).unwrap().is_some());
        }
    }
}

#[test]
fn trivial_group_induction_is_identity() {
    let a = example();
    let triv = Arc::new(halg_core::algcore::GroupAction::trivial(&a));
    let g = skew(&triv);
    let c = cat(&a);
    for m in c.simples() {
        let fm = induce(m, &g).unwrap();
        assert_eq!(fm.actions(), m.actions());
    }
}

#[test]
fn restrict_requires_skew_provenance() {
    let m = regular_module(&a2());
    assert_eq!(restrict(&m).unwrap_err(), ModError::NotASkewAlgebra);
}

#[test]
fn counit_splits_and_adjunction_counts() {
    let act = example_action();
    let g = skew(&act);
    let cl = cat(act.algebra());
    let cg = cat(&g);
    for n in cg.simples().iter().chain(&cg.projective_modules()) {
        let eps = counit_map(n).unwrap();
        assert!(eps.is_homomorphism() && eps.is_surjective());
        assert!(split_epi_section(&eps).unwrap().is_some());
        for m in cl.simples() {
            let fm = induce(m, &g).unwrap();
            let hn = restrict(n).unwrap();
            assert_eq!(hom_dim(&fm, n).unwrap(), hom_dim(m, &hn).unwrap());
            assert_eq!(hom_dim(n, &fm).unwrap(), hom_dim(&hn, m).unwrap());
        }
    }
}

#[test]
fn functors_are_exact_on_covers() {
    let act = example_action();
    let g = skew(&act);
    let c = cat(act.algebra());
    for s in c.simples() {
        let cov = c.projective_cover(s).unwrap();
        let (k, incl) = cov.module.submodule(&cov.map.kernel()).unwrap();
        let fi = induce_map(&incl, &g).unwrap();
        let fp = induce_map(&cov.map, &g).unwrap();
        assert!(fi.is_homomorphism() && fp.is_homomorphism());
        assert_eq!(fi.rank(), act.order() * k.dim());
        assert_eq!(fp.rank(), act.order() * s.dim());
        assert_eq!(fp.matrix().mul(fi.matrix()), Matrix::zeros(Q, fp.target().dim(), fi.source().dim()));
        let hf = restrict_map(&fp).unwrap();
        assert!(hf.is_homomorphism());
    }
}

#[test]
fn semisimple_modules_have_zero_radical() {
    let c = cat(&skew(&example_action()));
    for s in c.simples() {
        assert!(c.is_semisimple_module(s).unwrap());
        assert_eq!(c.socle_of(s), SubspaceBasis::full(Q, s.dim()));
    }
    assert_eq!(dims(c.simples()), vec![1, 1, 2]);
}
