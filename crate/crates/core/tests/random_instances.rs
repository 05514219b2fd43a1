use admgrad::admissible::{check_pair, construct_pair, occupied_slots, slice_complement, slot_dimension_identity};
use admgrad::connectivity::connect_to_dynkin;
use admgrad::instances::{random_instances, random_sl_instances};
use admgrad::sl2::{adapted_triple, isotypic_decompose, t_element};

#[test]
fn constructed_pairs_certify_across_random_instances() {
    for inst in random_instances(11, 60, 8).unwrap() {
        let g = &inst.grading;
        let tr = adapted_triple(g, &inst.e, &inst.a).unwrap();
        let t = t_element(g, &tr, &inst.a).unwrap();
        let dec = isotypic_decompose(g.algebra(), &tr, &t, &inst.a).unwrap();
        let pair = construct_pair(&dec, g).unwrap_or_else(|e| panic!("{}: {e}", inst.name));
        let rep = check_pair(g, &inst.e, &inst.a, &pair.m, &pair.n);
        assert!(rep.overall(), "{}", inst.name);
        assert!(rep.parity && rep.perp_bounded, "{}", inst.name);
        let s = slice_complement(g, &inst.e, &pair).unwrap();
        assert_eq!(s.dim(), rep.dim_ge, "{}", inst.name);
        for b in occupied_slots(g, &inst.a) {
            assert!(slot_dimension_identity(g, &inst.e, &inst.a, &pair, &b), "{} b={b}", inst.name);
        }
    }
}

#[test]
fn random_sl_gradings_connect_to_dynkin() {
    for inst in random_sl_instances(5, 20, 7).unwrap() {
        let cert = connect_to_dynkin(&inst.grading, &inst.e, &inst.a).unwrap_or_else(|e| panic!("{}: {e}", inst.name));
        assert!(cert.verify(inst.algebra()).unwrap(), "{}", inst.name);
    }
}
