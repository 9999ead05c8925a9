//! Acceptance checks shared by the kernel's integration tests and the
//! `acceptance` target of the command-line crate. Each returns a one-line
//! summary on success.

use cmtt_kernel::interval::{
    exc_face, face_canon, face_entails, int_equal, Face, IAtom, ITm, Interval,
};
use cmtt_kernel::mode_theory::ModeTheory;
use cmtt_kernel::syntax::{apply_subst_tm, ivar, Entry, Subst, Tm, Ty};
use cmtt_kernel::typecheck::{Checker, Options};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::gen::Gen;
use crate::{dm, faces, modes};

pub type Outcome = Result<String, String>;

/// Agreement of `int_equal` with the valuation and normal-form oracles on
/// every term in `terms`: each term is compared with its class
/// representative, and representatives are compared pairwise.
fn intervals_exhaustive(nvars: u8, depth: usize) -> Result<(usize, usize), String> {
    let terms = dm::enumerate(nvars, depth);
    let classes = dm::classify(&terms, nvars)?;
    for class in &classes {
        let rep = &terms[class[0]];
        for &k in &class[1..] {
            if !int_equal(&terms[k], rep) {
                return Err(format!("int_equal misses {:?} = {:?}", terms[k], rep));
            }
        }
    }
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if int_equal(&terms[a[0]], &terms[b[0]]) {
                return Err(format!(
                    "int_equal identifies {:?} and {:?}",
                    terms[a[0]], terms[b[0]]
                ));
            }
        }
    }
    Ok((terms.len(), classes.len()))
}

fn intervals_random(count: usize, seed: u64) -> Result<(usize, usize), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut equal = 0;
    for k in 0..count {
        let r = dm::random_term(&mut rng, 3, 7);
        let s = if k % 2 == 0 {
            let mut s = r.clone();
            for _ in 0..3 {
                s = dm::perturb(&mut rng, &s);
            }
            s
        } else {
            dm::random_term(&mut rng, 3, 7)
        };
        let by_nf = dm::normal_form(&r) == dm::normal_form(&s);
        let by_table = dm::table(&r, 3) == dm::table(&s, 3);
        let got = int_equal(&r, &s);
        if by_nf != by_table || got != by_nf {
            return Err(format!(
                "disagreement on {r:?} vs {s:?}: kernel {got}, normal form {by_nf}, valuation {by_table}"
            ));
        }
        equal += got as usize;
    }
    Ok((count, equal))
}

fn faces_exhaustive(nvars: u8) -> Result<usize, String> {
    let fs = faces::enumerate(nvars);
    let mut pairs = 0;
    for a in &fs {
        let ca = face_canon(a);
        for b in &fs {
            let want = faces::entails(a, b, nvars);
            if face_entails(&ca, b) != want {
                return Err(format!("face_entails({a:?}, {b:?}) should be {want}"));
            }
            pairs += 1;
        }
    }
    Ok(pairs)
}

fn faces_random(count: usize, seed: u64) -> Result<usize, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut yes = 0;
    for _ in 0..count {
        let a = faces::random_face(&mut rng, 3, 4);
        let b = if rng.gen() {
            Face::join(a.clone(), faces::random_face(&mut rng, 3, 2))
        } else {
            faces::random_face(&mut rng, 3, 4)
        };
        let want = faces::entails(&a, &b, 3);
        if face_entails(&face_canon(&a), &b) != want {
            return Err(format!("face_entails({a:?}, {b:?}) should be {want}"));
        }
        yes += want as usize;
    }
    Ok(yes)
}

/// Criterion 2.
pub fn algebra() -> Outcome {
    let mut exhaustive = 0;
    for (nvars, depth) in [(3, 2), (2, 2), (1, 3)] {
        exhaustive += intervals_exhaustive(nvars, depth)?.0;
    }
    let (random, equal) = intervals_random(10_000, 0x5eed)?;
    let face_pairs = faces_exhaustive(3)?;
    let (face_random, _) = (10_000, faces_random(10_000, 0xface)?);
    Ok(format!(
        "{exhaustive} enumerated interval terms, {random} random pairs ({equal} equal), \
         {face_pairs} enumerated face pairs, {face_random} random face pairs"
    ))
}

/// Criterion 3.
pub fn mode_g() -> Outcome {
    let th = ModeTheory::guarded();
    let m = |s: &str| th.parse_modality(s).map_err(|e| e.to_string());
    let err = |e: cmtt_kernel::mode_theory::ModeError| e.to_string();
    if !th.cell_exists(&m("δ∘γ")?, &m("1_t")?).map_err(err)? {
        return Err("δ∘γ ≤ 1 fails".into());
    }
    if !th
        .mod_equal(&th.compose(&m("γ")?, &m("δ")?).map_err(err)?, &m("1_s")?)
        .map_err(err)?
    {
        return Err("1 = γ∘δ fails".into());
    }
    if !th.cell_exists(&m("1_t")?, &m("ℓ")?).map_err(err)? {
        return Err("1 ≤ ℓ fails".into());
    }
    if !th
        .mod_equal(&th.compose(&m("γ")?, &m("ℓ")?).map_err(err)?, &m("γ")?)
        .map_err(err)?
    {
        return Err("γ = γ∘ℓ fails".into());
    }

    let cands: Vec<_> = modes::candidates(6)
        .into_iter()
        .map(|(w, dom)| {
            let act = modes::action(&w, dom).expect("candidate is composable");
            (modes::to_modality(&th, &w, dom), act, w, dom)
        })
        .collect();
    let words = modes::words(6);
    for (w, dom) in &words {
        let mu = modes::to_modality(&th, w, dom);
        let act = modes::action(w, dom).expect("enumerated words compose");
        let Some(c) = cands.iter().find(|c| c.0 == mu) else {
            return Err(format!(
                "normal form of {} is {}, outside the expected set",
                w.join("∘"),
                th.show(&mu)
            ));
        };
        if c.1 != act {
            return Err(format!(
                "{} normalizes to {}, which the model separates",
                w.join("∘"),
                th.show(&mu)
            ));
        }
    }

    // Cells among normal forms reached by the words, against the model
    // order; then preorder and whiskering closure.
    let reached: Vec<_> = cands.iter().filter(|c| c.2.len() <= 6).collect();
    let parallel = |a: &cmtt_kernel::mode_theory::Modality,
                    b: &cmtt_kernel::mode_theory::Modality| {
        a.dom() == b.dom() && a.cod() == b.cod()
    };
    let mut cells = 0;
    for a in &reached {
        for b in &reached {
            if !parallel(&a.0, &b.0) {
                continue;
            }
            let got = th.cell_exists(&a.0, &b.0).map_err(err)?;
            if got != modes::model_le(&a.1, &b.1) {
                return Err(format!(
                    "cell_exists({}, {}) = {got} disagrees with the model",
                    th.show(&a.0),
                    th.show(&b.0)
                ));
            }
            cells += got as usize;
            if a.0 == b.0 && !got {
                return Err(format!("cell_exists is not reflexive at {}", th.show(&a.0)));
            }
            for c in &reached {
                if parallel(&b.0, &c.0)
                    && got
                    && th.cell_exists(&b.0, &c.0).map_err(err)?
                    && !th.cell_exists(&a.0, &c.0).map_err(err)?
                {
                    return Err("cell_exists is not transitive".into());
                }
            }
            if got {
                for (g, gd, gc) in modes::GENS {
                    let gm = th.generator(g).map_err(err)?;
                    let gd = th.mode(gd).map_err(err)?;
                    let gc = th.mode(gc).map_err(err)?;
                    if gd == a.0.cod() {
                        let l = th.compose(&gm, &a.0).map_err(err)?;
                        let r = th.compose(&gm, &b.0).map_err(err)?;
                        if !th.cell_exists(&l, &r).map_err(err)? {
                            return Err(format!("left whiskering by {g} fails"));
                        }
                    }
                    if gc == a.0.dom() {
                        let l = th.compose(&a.0, &gm).map_err(err)?;
                        let r = th.compose(&b.0, &gm).map_err(err)?;
                        if !th.cell_exists(&l, &r).map_err(err)? {
                            return Err(format!("right whiskering by {g} fails"));
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "four laws hold; {} words up to length 6 normalize into the expected set; {cells} cells among {} normal forms",
        words.len(),
        reached.len()
    ))
}

fn ann(a: &Tm, t: &Ty) -> Tm {
    Tm::Ann(Box::new(a.clone()), Box::new(t.clone()))
}

fn sub(a: &Tm, t: &Ty, s: Subst) -> Tm {
    Tm::Sub(Box::new(ann(a, t)), Box::new(s))
}

/// `Γ → Γ` replacing the interval variables `i` (index 1) and `j` (index 0).
fn set_ivars(ri: ITm, rj: ITm) -> Subst {
    Subst::ext_int(
        Subst::ext_int(Subst::comp(Subst::WkInt, Subst::WkInt), ri),
        rj,
    )
}

fn tc<T>(r: Result<T, cmtt_kernel::typecheck::TypeError>, what: &str, e: &Tm) -> Result<T, String> {
    r.map_err(|err| format!("{what}: {err}\n  on {e:?}"))
}

fn expect(b: bool, what: &str, e: &Tm) -> Result<(), String> {
    if b {
        Ok(())
    } else {
        Err(format!("{what} fails on {e:?}"))
    }
}

/// Criterion 9: substitution functoriality, quote/eval idempotence and
/// face-splitting soundness of equality, each on `n` random instances.
pub fn structural(n: usize, seed: u64) -> Outcome {
    let th = ModeTheory::guarded();
    let g = Gen::new(&th);
    let ck = Checker::new(&th, Options::default());
    let cx = g.context();
    let bare = g.term_part();
    let mut rng = StdRng::seed_from_u64(seed);
    let pick = |rng: &mut StdRng| -> (Tm, Ty) {
        if rng.gen_ratio(1, 4) {
            (g.modal_term(rng, 3), g.modal_ty())
        } else {
            (g.bool_term(rng, 4), Ty::Bool)
        }
    };

    for _ in 0..n {
        let (a, ty) = pick(&mut rng);
        let s = g.subst(&mut rng, 2);
        let t = g.subst(&mut rng, 2);
        let twice = Tm::Sub(
            Box::new(ann(&sub(&a, &ty, s.clone()), &ty)),
            Box::new(t.clone()),
        );
        let once = sub(&a, &ty, Subst::comp(s.clone(), t.clone()));
        expect(
            tc(ck.equal_in(&cx, &ty, &twice, &once), "functoriality", &a)?,
            "a[σ][τ] = a[σ∘τ]",
            &a,
        )?;
        expect(
            tc(
                ck.equal_in(&cx, &ty, &sub(&a, &ty, Subst::Id), &a),
                "identity",
                &a,
            )?,
            "a[id] = a",
            &a,
        )?;
        // Syntactic substitution agrees with the explicit one.
        let shapes = cx.shapes();
        let push = |s: &Subst, e: &Tm| {
            apply_subst_tm(&th, cx.mode, &shapes, s, e).map_err(|e| e.to_string())
        };
        let stepwise = push(&t, &push(&s, &a)?)?;
        let (s2, t2) = (s.clone(), t.clone());
        let direct = push(&Subst::comp(s, t), &a)?;
        expect(
            tc(
                ck.equal_in(&cx, &ty, &stepwise, &direct),
                "syntactic functoriality",
                &a,
            )?,
            "syntactic a[σ][τ] = a[σ∘τ]",
            &a,
        )?;
        if !tc(
            ck.equal_in(&cx, &ty, &direct, &once),
            "syntactic vs explicit",
            &a,
        )? {
            return Err(format!(
                "syntactic and explicit substitution differ on {a:?}\n  σ∘τ = {:?}",
                Subst::comp(s2, t2)
            ));
        }
    }

    for _ in 0..n {
        let (a, ty) = pick(&mut rng);
        let nf = tc(ck.normalize_in(&cx, &a, &ty), "normalize", &a)?.remove(0);
        let nf2 = tc(ck.normalize_in(&cx, &nf, &ty), "renormalize", &nf)?.remove(0);
        expect(nf == nf2, "quote∘eval idempotence", &a)?;
        expect(
            tc(ck.equal_in(&cx, &ty, &a, &nf), "normal form", &a)?,
            "a = nf(a)",
            &a,
        )?;
    }

    let mut split_equal = 0;
    for _ in 0..n {
        let (a, ty) = pick(&mut rng);
        let phi = g.face(&mut rng);
        // Syntactic, so that `b` also checks under the restriction.
        let shapes = cx.shapes();
        let b = apply_subst_tm(
            &th,
            cx.mode,
            &shapes,
            &set_ivars(g.interval(&mut rng), ivar(0)),
            &a,
        )
        .map_err(|e| e.to_string())?;
        let restricted = cx.clone().with(Entry::Restrict(phi.clone()));
        let whole = tc(ck.equal_in(&restricted, &ty, &a, &b), "split equality", &a)?;
        let endpoint = |c: &std::collections::BTreeMap<IAtom, bool>, k: usize| {
            c.get(&IAtom::plain(k))
                .map(|&v| Interval::endpoint(v))
                .unwrap_or_else(|| ivar(k))
        };
        let mut per_clause = true;
        for c in face_canon(&phi).clauses() {
            let rho = set_ivars(endpoint(&c.0, 1), endpoint(&c.0, 0));
            per_clause &= tc(
                ck.equal_in(&cx, &ty, &sub(&a, &ty, rho.clone()), &sub(&b, &ty, rho)),
                "clause",
                &a,
            )?;
        }
        expect(
            whole == per_clause,
            "equality under φ agrees with equality on each clause",
            &a,
        )?;
        if whole {
            split_equal += 1;
            for vi in [false, true] {
                for vj in [false, true] {
                    let pt: std::collections::BTreeMap<IAtom, bool> =
                        [(IAtom::plain(1), vi), (IAtom::plain(0), vj)]
                            .into_iter()
                            .collect();
                    if !face_canon(&phi)
                        .clauses()
                        .iter()
                        .any(|c| c.0.iter().all(|(k, v)| pt.get(k) == Some(v)))
                    {
                        continue;
                    }
                    let rho = Subst::ext_int(
                        Subst::ext_int(Subst::Id, Interval::endpoint(vi)),
                        Interval::endpoint(vj),
                    );
                    let ok = tc(
                        ck.equal_in(&bare, &ty, &sub(&a, &ty, rho.clone()), &sub(&b, &ty, rho)),
                        "vertex",
                        &a,
                    )?;
                    expect(ok, "equality under φ holds at every vertex of φ", &a)?;
                }
            }
        }
    }
    Ok(format!(
        "{n} functoriality, {n} idempotence and {n} splitting instances ({split_equal} equal under their face)"
    ))
}

/// Criterion 4: instances of the modal composition law. For a generated
/// `e : A` over `x y f m i j` and `μ ∈ {ℓ, ℓ∘ℓ, ℓ∘ℓ∘ℓ}`, the tube is
/// `u = box_μ (e[r / j][Key_{1≤μ}])` along a fresh `k`, where `r` mentions `k`, with cap
/// `u[0/k]`. Both sides of the law must check at `⟨μ|A⟩`, be equal, and
/// under `φ` the composite must equal `u[1/k]`.
pub fn comp_mod(n: usize, seed: u64) -> Outcome {
    let th = ModeTheory::guarded();
    let g = Gen::new(&th);
    let ck = Checker::new(&th, Options::default());
    let cx = g.context();
    let mut rng = StdRng::seed_from_u64(seed);
    let ell = th.generator("ℓ").map_err(|e| e.to_string())?;
    let one = th.id(cx.mode);
    let mut mus = vec![ell.clone()];
    for _ in 0..2 {
        let last = mus.last().unwrap().clone();
        mus.push(th.compose(&ell, &last).map_err(|e| e.to_string())?);
    }
    // Γ.k → Γ sending j to one of k, j ∧ k, j ∨ ¬k.
    let wk3 = Subst::comp(Subst::comp(Subst::WkInt, Subst::WkInt), Subst::WkInt);
    let stretches: Vec<Subst> = [
        ivar(0),
        Interval::meet(ivar(1), ivar(0)),
        Interval::join(ivar(1), Interval::neg(ivar(0))),
    ]
    .into_iter()
    .map(|r| Subst::ext_int(Subst::ext_int(wk3.clone(), ivar(2)), r))
    .collect();
    let kshapes = cx.clone().with(Entry::IntVar).shapes();
    let (mut on_face, mut moving) = (0, 0);
    for _ in 0..n {
        let (e, a) = if rng.gen_ratio(1, 3) {
            (g.modal_term(&mut rng, 3), g.modal_ty())
        } else {
            (g.bool_term(&mut rng, 4), Ty::Bool)
        };
        let mu = mus[rng.gen_range(0..mus.len())].clone();
        let phi = g.face(&mut rng);
        let ma = Ty::modal(mu.clone(), a.clone());
        let key = Subst::Key {
            src: one.clone(),
            dst: mu.clone(),
        };
        // In Γ.k.𝐒_μ.
        let stretched = apply_subst_tm(&th, cx.mode, &kshapes, &stretches[rng.gen_range(0..3)], &e)
            .map_err(|e| e.to_string())?;
        let locked = cx
            .clone()
            .with(Entry::IntVar)
            .with(Entry::Lock(mu.clone()))
            .shapes();
        let t =
            apply_subst_tm(&th, cx.mode, &locked, &key, &stretched).map_err(|e| e.to_string())?;
        let u = Tm::mkbox(mu.clone(), t.clone());
        let rhs = Tm::comp(
            ma.clone(),
            phi.clone(),
            u.clone(),
            sub(&u, &ma, Subst::ext_int(Subst::Id, Interval::Zero)),
        );
        // The same data moved to Γ.𝐒_μ.k.
        let swapped = cx
            .clone()
            .with(Entry::Lock(mu.clone()))
            .with(Entry::IntVar)
            .shapes();
        let t_exc = apply_subst_tm(&th, cx.mode, &swapped, &Subst::ExcIntInv(mu.clone()), &t)
            .map_err(|e| e.to_string())?;
        let phi_exc = exc_face(&th, &mu, &phi).map_err(|e| e.to_string())?;
        let lhs = Tm::mkbox(
            mu.clone(),
            Tm::comp(
                a.clone(),
                phi_exc,
                t_exc.clone(),
                sub(&t_exc, &a, Subst::ext_int(Subst::Id, Interval::Zero)),
            ),
        );
        tc(ck.check_in(&cx, &rhs, &ma), "comp-mod right-hand side", &e)?;
        tc(ck.check_in(&cx, &lhs, &ma), "comp-mod left-hand side", &e)?;
        expect(
            tc(ck.equal_in(&cx, &ma, &lhs, &rhs), "comp-mod", &e)?,
            "comp-mod equation",
            &e,
        )?;
        let restricted = cx.clone().with(Entry::Restrict(phi.clone()));
        let rcxs = tc(ck.contexts(&restricted), "restriction", &e)?;
        if rcxs.is_empty() {
            continue;
        }
        on_face += 1;
        let end = sub(&u, &ma, Subst::ext_int(Subst::Id, Interval::One));
        expect(
            tc(ck.equal_in(&restricted, &ma, &rhs, &end), "boundary", &e)?,
            "comp under φ equals box(u[1/i])",
            &e,
        )?;
        expect(
            tc(ck.equal_in(&restricted, &ma, &lhs, &end), "boundary", &e)?,
            "box(comp) under φ equals box(u[1/i])",
            &e,
        )?;
        let start = sub(&u, &ma, Subst::ext_int(Subst::Id, Interval::Zero));
        if !tc(
            ck.equal_in(&restricted, &ma, &start, &end),
            "tube endpoints",
            &e,
        )? {
            moving += 1;
        }
    }
    Ok(format!(
        "{n} instances over ℓ, ℓ∘ℓ, ℓ∘ℓ∘ℓ checked and equal; boundary law on {on_face} consistent faces ({moving} with a non-constant tube)"
    ))
}
