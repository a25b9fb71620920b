//! Property checks of the bracket, the PBW engine, the lattice constructions
//! and the intermediate-series modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hvir_arith::{Rational, Scalar, Symbol};

use super::report::Outcome;
use super::LabConfig;
use crate::algebra::{LieElement, Virasoro};
use crate::error::Result;
use crate::intermediate::{
    box_vectors, intertwiner_residual, is_simple, iso_witness, rescale_criterion, verify_axiom_box,
    verify_axiom_symbolic, APrime, FamilySpec, Membership, Rescale, Simplicity,
};
use crate::lattice::{basis_lemma21, basis_lemma23, cone_membership, LatticeBasis, LatticeVector};
use crate::pbw::{normal_form_with, pbw_normal_form, OperatorExpr};

fn rng(config: &LabConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_vector(rng: &mut ChaCha8Rng, rank: usize, radius: i64) -> LatticeVector {
    LatticeVector::new((0..rank).map(|_| rng.gen_range(-radius..=radius)).collect())
}

/// A random element with up to three terms and small rational coefficients,
/// plus a central part.
fn random_element(rng: &mut ChaCha8Rng, rank: usize) -> LieElement {
    let mut x = LieElement::central(Scalar::rational(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
    for _ in 0..rng.gen_range(1..=3) {
        let v = random_vector(rng, rank, 5);
        x.add_term(v, Scalar::rational(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    x
}

/// Triples where some pair is opposite, so δ fires.
fn opposite_triple(rng: &mut ChaCha8Rng, rank: usize) -> [LatticeVector; 3] {
    let a = random_vector(rng, rank, 5);
    let b = random_vector(rng, rank, 5);
    match rng.gen_range(0..3) {
        0 => [a.clone(), -&a, b],
        1 => [a.clone(), b.clone(), -&(&a + &b)],
        _ => [a.clone(), b, -&a],
    }
}

pub(crate) fn antisymmetry(config: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    for rank in [2usize, 3] {
        let vir = Virasoro::new(LatticeBasis::standard(rank)?);
        let mut r = rng(config, rank as u64);
        for k in 0..config.samples {
            let (x, y) = if k % 4 == 0 {
                let v = random_vector(&mut r, rank, 5);
                (LieElement::generator(v.clone()), LieElement::generator(-&v))
            } else {
                (random_element(&mut r, rank), random_element(&mut r, rank))
            };
            let s = vir.bracket(&x, &y)?.add(&vir.bracket(&y, &x)?);
            o.require(s.is_zero(), || format!("[x,y]+[y,x] = {s} for x = {x}, y = {y}"));
        }
    }
    let line = LatticeBasis::standard(1)?.bind(0, Scalar::one());
    let vir = Virasoro::new(line);
    let v = |n: i64| LieElement::generator(LatticeVector::new(vec![n]));
    let central = vir.bracket(&v(2), &v(-2))?;
    o.require(central.central_part() == &Scalar::rational(-1, 2), || format!("[L_2, L_−2] = {central}"));
    o.note(format!("{} random pairs at ranks 2 and 3", 2 * config.samples));
    Ok(o)
}

pub(crate) fn grading(config: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    for rank in [2usize, 3] {
        let vir = Virasoro::new(LatticeBasis::standard(rank)?);
        let mut r = rng(config, 10 + rank as u64);
        for k in 0..config.samples {
            let mu = random_vector(&mut r, rank, 5);
            let nu = if k % 5 == 0 { -&mu } else { random_vector(&mut r, rank, 5) };
            let br = vir.bracket_generators(&mu, &nu);
            let sum = &mu + &nu;
            let component = br.graded_component(&sum);
            o.require(component == br, || format!("[L_{mu}, L_{nu}] leaves degree {sum}: {br}"));
            o.require(sum.is_zero() || br.central_part().is_zero(), || {
                format!("central term off degree zero in [L_{mu}, L_{nu}]")
            });
        }
    }
    Ok(o)
}

pub(crate) fn jacobi(config: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let generic = LatticeBasis::generic(&["μ", "ν", "λ"], false)?;
    let vir = Virasoro::new(generic.clone());
    let g = |i| LieElement::generator(generic.unit(i));
    let j = vir.jacobiator(&g(0), &g(1), &g(2))?;
    o.require(j.is_zero(), || format!("generic Jacobiator {j}"));
    let mixed = vir.jacobiator(&g(0), &LieElement::generator(-&generic.unit(0)), &g(2))?;
    o.require(mixed.is_zero(), || format!("Jacobiator with μ, −μ, λ: {mixed}"));

    let line = LatticeBasis::standard(1)?.bind(0, Scalar::one());
    let vir1 = Virasoro::new(line);
    let l = |n: i64| LieElement::generator(LatticeVector::new(vec![n]));
    let j1 = vir1.jacobiator(&l(1), &l(-1), &l(0))?;
    o.require(j1.is_zero(), || format!("Jacobiator of L_1, L_−1, L_0: {j1}"));

    for rank in [2usize, 3] {
        let vir = Virasoro::new(LatticeBasis::standard(rank)?);
        let mut r = rng(config, 20 + rank as u64);
        for k in 0..config.samples {
            let [a, b, c] = if k % 3 == 0 {
                opposite_triple(&mut r, rank)
            } else {
                [random_vector(&mut r, rank, 5), random_vector(&mut r, rank, 5), random_vector(&mut r, rank, 5)]
            };
            let (x, y, z) = (LieElement::generator(a), LieElement::generator(b), LieElement::generator(c));
            let j = vir.jacobiator(&x, &y, &z)?;
            o.require(j.is_zero(), || format!("Jacobiator of {x}, {y}, {z}: {j}"));
            let (x, y, z) = (random_element(&mut r, rank), random_element(&mut r, rank), random_element(&mut r, rank));
            let j = vir.jacobiator(&x, &y, &z)?;
            o.require(j.is_zero(), || format!("Jacobiator of {x}, {y}, {z}: {j}"));
        }
    }
    o.note(format!("{} random triples per rank at ranks 2 and 3, one third with opposite vectors", 2 * config.samples));
    Ok(o)
}

pub(crate) fn nested(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let basis = LatticeBasis::generic(&["μ", "b₁"], false)?;
    let vir = Virasoro::new(basis.clone());
    let mu = basis.gen("μ")?;
    let nu = basis.parse_vector("μ+b₁")?;
    let (m, b1) = (basis.embed(&mu), basis.embed(&basis.gen("b₁")?));
    for m2 in 2..=5usize {
        let got = vir.nested_bracket_coefficient(&mu, &nu, m2 - 1)?;
        let expect = (0..=(m2 as i64 - 2)).fold(Scalar::one(), |acc, i| acc.mul(&m.scale(&Rational::from_integer(i.into())).add(&b1)));
        o.zero(&format!("m₂ = {m2}"), &got.sub(&expect));
    }
    let zero = vir.nested_bracket_coefficient(&mu, &mu, 1)?;
    o.zero("[L_μ, L_μ]", &zero);
    o.note(format!("generic δ decisions: {}", vir.generic_decisions()));
    Ok(o)
}

pub(crate) fn pbw_canonical(config: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let basis = LatticeBasis::standard(1)?.bind(0, Scalar::one());
    let vir = Virasoro::new(basis.clone());
    let mut r = rng(config, 30);
    let trials = config.samples.min(40);
    for _ in 0..trials {
        let len = r.gen_range(2..=4);
        let letters: Vec<OperatorExpr> = (0..len)
            .map(|_| OperatorExpr::gen(LatticeVector::new(vec![r.gen_range(-3..=3)])))
            .collect();
        let e = OperatorExpr::product(letters);
        let reference = pbw_normal_form(&vir, &e)?;
        let mut seed = r.gen::<u64>();
        let mut choose = |n: usize| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) as usize % n
        };
        let other = normal_form_with(&vir, &e.expand(), &mut choose)?;
        o.require(reference == other, || format!("rewrite order changes the normal form of {e:?}"));
    }
    let generic = LatticeBasis::generic(&["μ", "ν"], false)?;
    let vir = Virasoro::new(generic.clone());
    let e = OperatorExpr::sub(
        OperatorExpr::comm(OperatorExpr::gen(generic.unit(0)), OperatorExpr::gen(generic.unit(1))),
        OperatorExpr::scale(
            generic.embed(&generic.unit(1)).sub(&generic.embed(&generic.unit(0))),
            OperatorExpr::gen(&generic.unit(0) + &generic.unit(1)),
        ),
    );
    let nf = pbw_normal_form(&vir, &e)?;
    o.require(nf.is_zero(), || format!("[L_μ, L_ν] − (ν−μ)L_{{μ+ν}} normal form {nf}"));
    o.note(format!("{trials} random words under random rewrite orders"));
    Ok(o)
}

pub(crate) fn cone(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let change = basis_lemma21(2, 2)?;
    for c1 in 0..=3i64 {
        for c2 in 0..=3i64 {
            if c1 == 0 && c2 == 0 {
                continue;
            }
            let v = LatticeVector::new(vec![c1, c2]);
            o.require(cone_membership(&v, &change, 2), || {
                format!("{c1}·b′₁ + {c2}·b′₂ = {} is outside the cone", change.to_old(&v))
            });
        }
    }
    let zero = LatticeVector::new(vec![0, 0]);
    o.require(!cone_membership(&zero, &change, 2), || "zero multi-index lies in the cone".into());
    o.note("the zero multi-index is excluded: L₀ lies in the degree-≥0 part for the new basis but not in the degree-≥k cone");
    Ok(o)
}

pub(crate) fn degree(config: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let mut r = rng(config, 40);
    for rank in 1..=4usize {
        let basis = LatticeBasis::standard(rank)?;
        for _ in 0..config.samples {
            let (a, b) = (random_vector(&mut r, rank, 9), random_vector(&mut r, rank, 9));
            let s = &a + &b;
            o.require(s.deg() == a.deg() + b.deg(), || format!("deg({a}+{b}) = {}", s.deg()));
            let e = basis.embed(&s).sub(&basis.embed(&a)).sub(&basis.embed(&b));
            o.zero(&format!("embedding of {a} + {b}"), &e);
        }
    }
    o.require(LatticeVector::new(vec![2, -3]).deg() == -1, || "deg(2,−3) ≠ −1".into());
    Ok(o)
}

pub(crate) fn lemma21(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let mut off = Vec::new();
    for n in 1..=5usize {
        for k in 0..=4u32 {
            let change = basis_lemma21(n, k)?;
            let det = change.determinant();
            if det != 1.into() {
                off.push(format!("(n, k) = ({n}, {k}): {det}"));
            }
            let low = change.rows().iter().flatten().all(|&x| x >= k as i64);
            o.require(low, || format!("n = {n}, k = {k}: an entry is below k"));
        }
    }
    o.require(off.is_empty(), || format!("determinant ≠ 1 at {}", off.join("; ")));
    o.note("ranks 1–5, k = 0–4; the determinant is 1 + k·[n = 1]");
    Ok(o)
}

pub(crate) fn lemma23(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let mut count = 0usize;
    for n in [2usize, 3] {
        for mu in box_vectors(n, 4).into_iter().filter(|v| !v.is_zero()) {
            let l = basis_lemma23(&mu)?;
            count += 1;
            let det = l.change_in_original().determinant();
            o.require(l.change.is_unimodular() && l.change_in_original().is_unimodular(), || {
                format!("μ = {mu}: determinant {det}")
            });
        }
    }
    o.note(format!("{count} vectors in [−4,4]^n \\ {{0}}, n = 2, 3"));
    Ok(o)
}

fn box_axiom(o: &mut Outcome, spec: &FamilySpec, config: &LabConfig) -> Result<()> {
    let basis = LatticeBasis::standard(config.rank)?;
    let out = verify_axiom_box(spec, &basis, config.radius)?;
    if let Some((a, b, c, r)) = &out.failure {
        o.require(false, || format!("{}: (μ, ν, λ) = ({a}, {b}, {c}) leaves {r}", spec.name()));
    }
    o.note(format!("{}: {} triples on the rank-{} box of radius {}", spec.name(), out.cases, config.rank, config.radius));
    Ok(())
}

pub(crate) fn axiom_aab(config: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let p = |n: &str| Scalar::var(Symbol::parameter(n));
    let spec = FamilySpec::Aab { a: p("a"), b: p("b") };
    let out = verify_axiom_symbolic(&spec)?;
    if let Some((_, _, _, r)) = &out.failure {
        o.require(false, || format!("generic residual {r}"));
    }
    let basis = LatticeBasis::standard(config.rank)?;
    let out = verify_axiom_box(&spec, &basis, config.radius.min(2))?;
    if let Some((a, b, c, r)) = &out.failure {
        o.require(false, || format!("(μ, ν, λ) = ({a}, {b}, {c}) leaves {r}"));
    }
    o.note("generic μ, ν, λ and the opposite-pair cases on a small box");
    Ok(o)
}

pub(crate) fn axiom_aprime(config: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    box_axiom(&mut o, &FamilySpec::Aprime(APrime::Finite(Scalar::var(Symbol::parameter("a′")))), config)?;
    box_axiom(&mut o, &FamilySpec::Aprime(APrime::Infinity), config)?;
    Ok(o)
}

pub(crate) fn axiom_bprime(config: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    box_axiom(&mut o, &FamilySpec::Bprime(APrime::Finite(Scalar::var(Symbol::parameter("a′")))), config)?;
    box_axiom(&mut o, &FamilySpec::Bprime(APrime::Infinity), config)?;
    Ok(o)
}

pub(crate) fn iso(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let a = Scalar::var(Symbol::parameter("a"));
    let res = iso_witness(&a, &Membership::NotInM)?;
    o.require(res.is_empty(), || format!("generic residual {res:?}"));
    let guard = iso_witness(&Scalar::zero(), &Membership::InM(LatticeVector::new(vec![0, 0])));
    o.require(guard.is_err(), || "a ∈ M was accepted".into());
    let basis = LatticeBasis::standard(2)?;
    let numeric = intertwiner_residual(
        &Scalar::rational(1, 2),
        &basis,
        &LatticeVector::new(vec![1, 0]),
        &LatticeVector::new(vec![0, 1]),
    )?;
    o.require(numeric.is_empty(), || format!("a = 1/2 residual {numeric:?}"));
    Ok(o)
}

pub(crate) fn rescale(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let one = Scalar::one();
    let half = Scalar::rational(1, 2);
    let r2 = Scalar::var(Symbol::parameter("√2"));
    let r3 = Scalar::var(Symbol::parameter("√3"));
    let iso = rescale_criterion(&[one.clone()], &[Scalar::integer(2)], &half)?;
    o.require(iso == Rescale::Isomorphic, || format!("ℤ vs 2ℤ with a = 1/2: {iso:?}"));
    let same = rescale_criterion(&[one.clone(), r2.clone()], &[one.clone(), r2.clone()], &one)?;
    o.require(same == Rescale::Isomorphic, || format!("M = M′, a = 1: {same:?}"));
    for a in [one.clone(), half, r2.clone(), r3.clone()] {
        let out = rescale_criterion(&[one.clone(), r2.clone()], &[one.clone(), r3.clone()], &a)?;
        o.require(matches!(out, Rescale::NotIsomorphic(_)), || format!("ℤ⊕ℤ√2 vs ℤ⊕ℤ√3 with a = {a}"));
    }
    Ok(o)
}

pub(crate) fn simple(_: &LabConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    let aab = |b: i64| FamilySpec::Aab { a: Scalar::zero(), b: Scalar::integer(b) };
    let zero = Membership::InM(LatticeVector::new(vec![0, 0]));
    let cases = [
        (aab(7), Membership::NotInM, "simple"),
        (aab(0), zero.clone(), "not simple"),
        (aab(1), zero.clone(), "not simple"),
        (aab(2), zero.clone(), "simple"),
    ];
    for (spec, m, expect) in cases {
        let got = match is_simple(&spec, &m) {
            Simplicity::Simple(_) => "simple",
            Simplicity::NotSimple(_) => "not simple",
            Simplicity::Undecidable(_) => "undecidable",
        };
        o.require(got == expect, || format!("{spec:?} with {m:?}: {got}"));
    }
    let undecided = is_simple(&aab(2), &Membership::Undeclared);
    o.require(matches!(undecided, Simplicity::Undecidable(_)), || "undeclared membership was decided".into());
    Ok(o)
}
