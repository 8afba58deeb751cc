//! The identity suite behind `weyl verify`: every algebraic law the crate
//! promises, evaluated exhaustively where the order allows it and on seeded
//! samples above that, each reported as one named row with its measured
//! deviation and tolerance.

use weyl_core::element::AlgebraElement;
use weyl_core::idempotent::{
    left_ideal_basis, matrix_unit, primitive_idempotent, right_ideal_basis, IdempotentSet,
};
use weyl_core::matrix::{conj_transpose, from_matrix, max_abs_diff, to_matrix};
use weyl_core::operators::{
    dual_idempotent, duality_map_dft, exp_form_report, ket_to_ideal, momentum_operator,
    position_operator, translation_momentum, translation_position,
};
use weyl_core::params::AlgebraParams;
use weyl_core::rng;
use weyl_core::{C64, Matrix};

use rand_like::SampleSource;

/// Tiny deterministic index sampler driven by the crate RNG, so sampled
/// suites are reproducible from the seed alone.
mod rand_like {
    use rand::Rng;

    pub struct SampleSource(pub rand_chacha::ChaCha8Rng);

    impl SampleSource {
        pub fn index(&mut self, n: usize) -> i64 {
            self.0.random_range(0..n as i64)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sampled,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sampled => "sampled",
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyRow {
    pub identity: &'static str,
    pub max_dev: f64,
    pub tol: f64,
    pub mode: Mode,
    pub pass: bool,
}

fn row(identity: &'static str, max_dev: f64, tol: f64, mode: Mode) -> VerifyRow {
    VerifyRow {
        identity,
        max_dev,
        tol,
        mode,
        pass: max_dev <= tol,
    }
}

/// Exhaustive index-pair/quadruple loops are kept to orders where they are
/// cheap; above these bounds the same identities run on seeded samples.
const EXHAUSTIVE_PAIR_LIMIT: usize = 16;
const EXHAUSTIVE_QUAD_LIMIT: usize = 12;

pub fn run_suite(params: AlgebraParams, seed: u64) -> Vec<VerifyRow> {
    let n = params.n();
    let ni = n as i64;
    let tol = params.tol();
    let mut src = SampleSource(rng::seeded(seed));
    let mut rows = Vec::new();

    let shift = AlgebraElement::generator_shift(params);
    let clock = AlgebraElement::generator_clock(params);
    let one = AlgebraElement::identity(params);

    // generator relations
    {
        let dev = shift
            .pow(n as u32)
            .unwrap()
            .max_dev(&one)
            .max(clock.pow(n as u32).unwrap().max_dev(&one));
        rows.push(row("generator_order_n", dev, tol, Mode::Exhaustive));

        let lhs = shift.multiply(&clock).unwrap();
        let rhs = clock.multiply(&shift).unwrap().scale(params.omega());
        rows.push(row(
            "twist_relation_shift_clock",
            lhs.max_dev(&rhs),
            tol,
            Mode::Exhaustive,
        ));
    }

    // structured product rule on basis elements
    {
        let check = |a: i64, b: i64, c: i64, d: i64| -> f64 {
            let x = AlgebraElement::basis_element(params, a, b);
            let y = AlgebraElement::basis_element(params, c, d);
            let lhs = x.multiply(&y).unwrap();
            let rhs =
                AlgebraElement::basis_element(params, a + c, b + d).scale(params.omega_pow(-b * c));
            lhs.max_dev(&rhs)
        };
        let (dev, mode) = if n <= EXHAUSTIVE_PAIR_LIMIT {
            let mut dev = 0.0f64;
            for a in 0..ni {
                for b in 0..ni {
                    for c in 0..ni {
                        for d in 0..ni {
                            dev = dev.max(check(a, b, c, d));
                        }
                    }
                }
            }
            (dev, Mode::Exhaustive)
        } else {
            let mut dev = 0.0f64;
            for _ in 0..2000 {
                let (a, b, c, d) = (src.index(n), src.index(n), src.index(n), src.index(n));
                dev = dev.max(check(a, b, c, d));
            }
            (dev, Mode::Sampled)
        };
        rows.push(row("basis_product_rule", dev, tol, mode));
    }

    // associativity on random dense elements (coefficients scaled by 1/n to
    // keep triple-product rounding far inside the tolerance)
    {
        let trials = if n <= 32 { 25 } else { 8 };
        let scale = 1.0 / n as f64;
        let mut dev = 0.0f64;
        for _ in 0..trials {
            let x = rng::random_element(params, &mut src.0, scale);
            let y = rng::random_element(params, &mut src.0, scale);
            let z = rng::random_element(params, &mut src.0, scale);
            let lhs = x.multiply(&y).unwrap().multiply(&z).unwrap();
            let rhs = x.multiply(&y.multiply(&z).unwrap()).unwrap();
            dev = dev.max(lhs.max_dev(&rhs));
        }
        rows.push(row("product_associativity", dev, tol, Mode::Sampled));
    }

    // adjoint laws
    {
        let mut dev = 0.0f64;
        for a in 0..ni {
            for b in 0..ni {
                let e = AlgebraElement::basis_element(params, a, b);
                let want =
                    AlgebraElement::basis_element(params, -a, -b).scale(params.omega_pow(-a * b));
                dev = dev.max(e.adjoint().max_dev(&want));
            }
        }
        rows.push(row("adjoint_closed_form", dev, tol, Mode::Exhaustive));

        let mut inv_dev = 0.0f64;
        let mut anti_dev = 0.0f64;
        for _ in 0..10 {
            let x = rng::random_element(params, &mut src.0, 1.0);
            let y = rng::random_element(params, &mut src.0, 1.0 / n as f64);
            inv_dev = inv_dev.max(x.adjoint().adjoint().max_dev(&x));
            let lhs = x.multiply(&y).unwrap().adjoint();
            let rhs = y.adjoint().multiply(&x.adjoint()).unwrap();
            anti_dev = anti_dev.max(lhs.max_dev(&rhs));
        }
        rows.push(row("adjoint_involution", inv_dev, tol, Mode::Sampled));
        rows.push(row("adjoint_antihomomorphism", anti_dev, tol, Mode::Sampled));

        let mut unit_dev = 0.0f64;
        for a in 0..ni {
            for b in 0..ni {
                let e = AlgebraElement::basis_element(params, a, b);
                unit_dev = unit_dev.max(e.multiply(&e.adjoint()).unwrap().max_dev(&one));
            }
        }
        rows.push(row("basis_elements_unitary", unit_dev, tol, Mode::Exhaustive));
    }

    // representation: matrix images respect products, adjoints, and the
    // closed-form image of each basis element
    {
        let mut image_dev = 0.0f64;
        let omega = params.omega_table();
        for a in 0..n {
            for b in 0..n {
                let m = to_matrix(&AlgebraElement::basis_element(params, a as i64, b as i64));
                let mut want = Matrix::zeros((n, n));
                for j in 0..n {
                    let col = (j + a) % n;
                    want[[j, col]] = omega[(b * col) % n];
                }
                image_dev = image_dev.max(max_abs_diff(&m, &want));
            }
        }
        rows.push(row(
            "representation_basis_images",
            image_dev,
            tol,
            Mode::Exhaustive,
        ));

        let (prod_dev, adj_dev, mode) = if n <= EXHAUSTIVE_PAIR_LIMIT {
            let mut prod_dev = 0.0f64;
            let mut adj_dev = 0.0f64;
            let mats: Vec<(AlgebraElement, Matrix)> = (0..ni)
                .flat_map(|a| (0..ni).map(move |b| (a, b)))
                .map(|(a, b)| {
                    let e = AlgebraElement::basis_element(params, a, b);
                    let m = to_matrix(&e);
                    (e, m)
                })
                .collect();
            for (ex, mx) in &mats {
                adj_dev = adj_dev.max(max_abs_diff(&to_matrix(&ex.adjoint()), &conj_transpose(mx)));
                for (ey, my) in &mats {
                    let lhs = to_matrix(&ex.multiply(ey).unwrap());
                    prod_dev = prod_dev.max(max_abs_diff(&lhs, &mx.dot(my)));
                }
            }
            (prod_dev, adj_dev, Mode::Exhaustive)
        } else {
            let pairs = if n <= 32 { 100 } else { 25 };
            let scale = 1.0 / n as f64;
            let mut prod_dev = 0.0f64;
            let mut adj_dev = 0.0f64;
            for _ in 0..pairs {
                let x = rng::random_element(params, &mut src.0, scale);
                let y = rng::random_element(params, &mut src.0, scale);
                let (mx, my) = (to_matrix(&x), to_matrix(&y));
                prod_dev = prod_dev
                    .max(max_abs_diff(&to_matrix(&x.multiply(&y).unwrap()), &mx.dot(&my)));
                adj_dev =
                    adj_dev.max(max_abs_diff(&to_matrix(&x.adjoint()), &conj_transpose(&mx)));
            }
            (prod_dev, adj_dev, Mode::Sampled)
        };
        rows.push(row("representation_product", prod_dev, tol, mode));
        rows.push(row("representation_adjoint", adj_dev, tol, mode));

        let mut rt_dev = 0.0f64;
        for _ in 0..10 {
            let x = rng::random_element(params, &mut src.0, 1.0);
            rt_dev = rt_dev.max(from_matrix(params, &to_matrix(&x)).unwrap().max_dev(&x));
        }
        rows.push(row("representation_round_trip", rt_dev, tol, Mode::Sampled));
    }

    // idempotent system and matrix-unit contraction
    {
        let set = IdempotentSet::canonical(params);
        let check = set.validate().expect("canonical system validates");
        rows.push(row(
            "idempotent_system",
            check.max_dev(),
            tol,
            Mode::Exhaustive,
        ));

        let contract = |i: i64, j: i64, k: i64, l: i64| -> f64 {
            let prod = matrix_unit(params, i, j)
                .unwrap()
                .multiply(&matrix_unit(params, k, l).unwrap())
                .unwrap();
            if (j - k).rem_euclid(ni) == 0 {
                prod.max_dev(&matrix_unit(params, i, l).unwrap())
            } else {
                prod.max_abs()
            }
        };
        let (dev, mode) = if n <= EXHAUSTIVE_QUAD_LIMIT {
            let mut dev = 0.0f64;
            for i in 0..ni {
                for j in 0..ni {
                    for k in 0..ni {
                        for l in 0..ni {
                            dev = dev.max(contract(i, j, k, l));
                        }
                    }
                }
            }
            (dev, Mode::Exhaustive)
        } else {
            let mut dev = 0.0f64;
            for _ in 0..1000 {
                dev = dev.max(contract(
                    src.index(n),
                    src.index(n),
                    src.index(n),
                    src.index(n),
                ));
            }
            (dev, Mode::Sampled)
        };
        rows.push(row("matrix_unit_contraction", dev, tol, mode));

        let mut adj_dev = 0.0f64;
        for i in 0..ni {
            for j in 0..ni {
                adj_dev = adj_dev.max(
                    matrix_unit(params, i, j)
                        .unwrap()
                        .adjoint()
                        .max_dev(&matrix_unit(params, j, i).unwrap()),
                );
            }
        }
        rows.push(row("matrix_unit_adjoint_swap", adj_dev, tol, Mode::Exhaustive));

        let mut ideal_dev = 0.0f64;
        let eps00 = primitive_idempotent(params, 0).unwrap();
        for i in 0..ni {
            for j in 0..ni {
                let lr = left_ideal_basis(params, i)
                    .unwrap()
                    .multiply(&right_ideal_basis(params, j).unwrap())
                    .unwrap();
                ideal_dev = ideal_dev.max(lr.max_dev(&matrix_unit(params, i, j).unwrap()));
                let rl = right_ideal_basis(params, i)
                    .unwrap()
                    .multiply(&left_ideal_basis(params, j).unwrap())
                    .unwrap();
                if i == j {
                    ideal_dev = ideal_dev.max(rl.max_dev(&eps00));
                } else {
                    ideal_dev = ideal_dev.max(rl.max_abs());
                }
            }
        }
        rows.push(row("ideal_basis_products", ideal_dev, tol, Mode::Exhaustive));
    }

    // observables: eigen-relations, transports, duality
    {
        let x = position_operator(params);
        let p = momentum_operator(params);

        let mut eig_dev = 0.0f64;
        for j in 0..ni {
            for m in 0..ni {
                let unit = matrix_unit(params, j, m).unwrap();
                let lhs = x.multiply(&unit).unwrap();
                let rhs = unit.scale(C64::new(j as f64, 0.0));
                eig_dev = eig_dev.max(lhs.max_dev(&rhs));
            }
        }
        rows.push(row("position_eigen_relation", eig_dev, tol, Mode::Exhaustive));

        let mut dual_eig_dev = 0.0f64;
        for j in 0..ni {
            let e = dual_idempotent(params, j).unwrap();
            let lhs = p.multiply(&e).unwrap();
            dual_eig_dev = dual_eig_dev.max(lhs.max_dev(&e.scale(C64::new(j as f64, 0.0))));
        }
        rows.push(row(
            "momentum_dual_eigen_relation",
            dual_eig_dev,
            tol,
            Mode::Exhaustive,
        ));

        let mut trans_dev = 0.0f64;
        for a in 0..ni {
            let t = translation_position(params, a);
            let t_inv = t.adjoint(); // unitary basis element
            for j in 0..ni {
                let moved = t
                    .multiply(&primitive_idempotent(params, j).unwrap())
                    .unwrap()
                    .multiply(&t_inv)
                    .unwrap();
                let target = primitive_idempotent(params, params.reduce(j + a) as i64).unwrap();
                trans_dev = trans_dev.max(moved.max_dev(&target));
            }
        }
        rows.push(row(
            "position_translation_transport",
            trans_dev,
            tol,
            Mode::Exhaustive,
        ));

        let mut dual_trans_dev = 0.0f64;
        let tm = translation_momentum(params, 1);
        let tm_inv = tm.adjoint();
        for j in 0..ni {
            let moved = tm
                .multiply(&dual_idempotent(params, j).unwrap())
                .unwrap()
                .multiply(&tm_inv)
                .unwrap();
            let target = dual_idempotent(params, params.reduce(j + 1) as i64).unwrap();
            dual_trans_dev = dual_trans_dev.max(moved.max_dev(&target));
        }
        rows.push(row(
            "momentum_translation_transport",
            dual_trans_dev,
            tol,
            Mode::Exhaustive,
        ));

        let f = duality_map_dft(params);
        let f_inv = f.adjoint();
        rows.push(row(
            "duality_map_unitary",
            f.multiply(&f_inv).unwrap().max_dev(&one),
            tol,
            Mode::Exhaustive,
        ));

        let mut dual_conj_dev = 0.0f64;
        for j in 0..ni {
            let moved = f
                .multiply(&primitive_idempotent(params, j).unwrap())
                .unwrap()
                .multiply(&f_inv)
                .unwrap();
            dual_conj_dev = dual_conj_dev.max(moved.max_dev(&dual_idempotent(params, j).unwrap()));
        }
        rows.push(row(
            "duality_conjugation",
            dual_conj_dev,
            tol,
            Mode::Exhaustive,
        ));

        let mut pairing_dev = 0.0f64;
        for _ in 0..10 {
            let phi = rng::random_state(params, &mut src.0);
            let psi = rng::random_state(params, &mut src.0);
            let lhs = ket_to_ideal(&phi)
                .unwrap()
                .adjoint()
                .multiply(&ket_to_ideal(&psi).unwrap())
                .unwrap();
            let rhs = eps00_scaled(params, phi.inner(&psi).unwrap());
            pairing_dev = pairing_dev.max(lhs.max_dev(&rhs));
        }
        rows.push(row("ideal_pairing_contract", pairing_dev, tol, Mode::Sampled));

        let exp = exp_form_report(params).expect("exponential report");
        rows.push(row(
            "exp_form_clock_adopted_sign",
            exp.clock_dev_plus,
            tol,
            Mode::Exhaustive,
        ));
        rows.push(row(
            "exp_form_shift_adopted_sign",
            exp.shift_dev_plus,
            tol,
            Mode::Exhaustive,
        ));
    }

    rows
}

fn eps00_scaled(params: AlgebraParams, z: C64) -> AlgebraElement {
    primitive_idempotent(params, 0).unwrap().scale(z)
}

pub fn all_pass(rows: &[VerifyRow]) -> bool {
    rows.iter().all(|r| r.pass)
}
