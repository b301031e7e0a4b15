//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! The corpus is every connected multigraph with at most 4 vertices and 5
//! edges, one representative per isomorphism+redirection class. All
//! comparisons are exact; stated runtime bounds are asserted.

use bpe_cli::survey::{self, VerdictCache};
use bpe_core::cert::{builtin_certificates, check_certificate, CertVerdict};
use bpe_core::content;
use bpe_core::fixpoint::{decide, premorphism_check, ArrowTable, Verdict};
use bpe_core::fixtures;
use bpe_core::graph::{EditOp, Graph, Subgraph, VertexId};
use bpe_core::minors;
use bpe_core::oracle;
use bpe_core::variety::{enumerate_values, realizable_in, realize_value, ArrowValue, VarietySpec};
use std::time::{Duration, Instant};

fn corpus_4_5() -> Vec<Graph> {
    survey::enumerate_connected_multigraphs(4, 5).expect("within default budgets")
}

fn corpus_3_4() -> Vec<Graph> {
    survey::enumerate_connected_multigraphs(3, 4).expect("within default budgets")
}

fn named_arrow(g: &Graph, u: VarietySpec, s: &str, d: &str, entries: &[(&str, i64)]) -> ArrowValue {
    let mut v = vec![0i64; g.edge_count()];
    for (name, x) in entries {
        v[g.find_edge(name).unwrap().index()] = *x;
    }
    ArrowValue::new(
        g,
        u,
        g.find_vertex(s).unwrap(),
        g.find_vertex(d).unwrap(),
        v,
    )
    .unwrap()
}

fn assert_within(elapsed: Duration, bound: Duration, what: &str) {
    assert!(
        elapsed <= bound,
        "{what} took {elapsed:?}, over the {bound:?} budget"
    );
}

/// Criterion 1: both catalog graphs break over ab:2 with the doubled edge
/// as the witness arrow, the level-0 anchor is the doubled edge itself and
/// the level-1 anchor is the bare source. Under a second each.
#[test]
fn acceptance_1_catalog_reproduction() {
    for g in [fixtures::theta3(), fixtures::digons2()] {
        let t0 = Instant::now();
        let verdict = decide(&g, VarietySpec::AbExp(2)).unwrap();
        let elapsed = t0.elapsed();
        let Verdict::Breaking {
            arrow,
            witness,
            level,
            trace,
        } = verdict
        else {
            panic!("catalog graph must break");
        };
        let expected = named_arrow(&g, VarietySpec::AbExp(2), "u", "v", &[("a", 1)]);
        assert_eq!(arrow, expected);
        assert_eq!(level, 1);
        assert_eq!(
            ArrowValue::of_path(&g, VarietySpec::AbExp(2), &witness),
            expected
        );
        let rendered = |lvl: u32| {
            trace
                .iter()
                .find(|ev| ev.level == lvl && ev.arrow == expected)
                .map(|ev| ev.render(&g))
                .unwrap()
        };
        assert_eq!(rendered(0), "n=0 arrow=u->v[a:1] P={u,v;a}");
        assert_eq!(rendered(1), "n=1 arrow=u->v[a:1] P={u;}");
        assert_within(elapsed, Duration::from_secs(1), "catalog decide");
    }
    println!("[criterion 1] PASS catalog graphs break at level 1, witness u->v[a:1]");
}

/// Criterion 2: the builtin free-Abelian certificates verify with the
/// singleton bound at the source; every single tampering flips the verdict
/// to Malformed or NotProven. Under a second.
#[test]
fn acceptance_2_certificate_checking() {
    let t0 = Instant::now();
    let certs = builtin_certificates();
    assert_eq!(certs.len(), 2);
    for (name, cert) in &certs {
        let report = check_certificate(cert);
        assert_eq!(report.verdict, CertVerdict::Verified, "{name}");
        let u = Subgraph::single_vertex(cert.graph.find_vertex("u").unwrap());
        assert_eq!(report.final_upper_anchor.unwrap(), u, "{name}");

        // endpoint swap
        let mut tampered = cert.clone();
        let child = &mut tampered.root.factorizations[0][0];
        std::mem::swap(&mut child.arrow.src, &mut child.arrow.dst);
        assert!(
            matches!(check_certificate(&tampered).verdict, CertVerdict::Malformed(_)),
            "{name}: endpoint swap must be malformed"
        );

        // vector edit
        let mut tampered = cert.clone();
        tampered.root.factorizations[0][1]
            .arrow
            .vec
            .insert("a".into(), 2);
        assert_ne!(check_certificate(&tampered).verdict, CertVerdict::Verified);

        // dropped factorization child
        let mut tampered = cert.clone();
        tampered.root.factorizations[0].pop();
        assert_ne!(check_certificate(&tampered).verdict, CertVerdict::Verified);
    }
    assert_within(t0.elapsed(), Duration::from_secs(1), "certificate checks");
    println!("[criterion 2] PASS builtin certificates verify; tampering flips the verdict");
}

/// Criterion 3: cycles C2..C6, their decorated variants (pendant tree plus
/// loop) and 2-vertex multigraphs with up to 4 parallel edges all hold
/// over ab:2 and ab:3. Under 30 seconds total.
#[test]
fn acceptance_3_holding_families() {
    let t0 = Instant::now();
    let mut graphs: Vec<Graph> = Vec::new();
    for n in 2..=6 {
        graphs.push(fixtures::cycle(n));
        graphs.push(fixtures::decorated_cycle(n));
    }
    for k in 1..=4 {
        graphs.push(fixtures::parallel_edges(k));
    }
    for g in &graphs {
        for n in [2, 3] {
            let verdict = decide(g, VarietySpec::AbExp(n)).unwrap();
            assert!(
                !verdict.is_breaking(),
                "{:?} must hold over ab:{n}",
                g.to_file().vertices
            );
        }
    }
    assert_within(t0.elapsed(), Duration::from_secs(30), "holding families");
    println!(
        "[criterion 3] PASS {} graphs hold over ab:2 and ab:3 in {:?}",
        graphs.len(),
        t0.elapsed()
    );
}

/// Criterion 4: over the full corpus, breaking over ab:2 is equivalent to
/// containing a catalog minor, with zero disagreements, and the mined
/// minimal breaking set is exactly the two-graph catalog. Under 10 min.
#[test]
fn acceptance_4_obstruction_equivalence() {
    let t0 = Instant::now();
    let report = survey::run_survey(4, 5, &[VarietySpec::AbExp(2)]).unwrap();
    assert_eq!(report.summary.disagreements, 0);
    for r in &report.records {
        let breaking = r.verdicts[0].breaking;
        let forbidden = r.structure.starts_with("contains-forbidden");
        assert_eq!(breaking, forbidden, "graph {}", r.code);
    }
    let expected: Vec<String> = {
        let mut codes: Vec<String> = minors::CatalogIndex::all()
            .iter()
            .map(|w| minors::code_string(&minors::canonical_code(&w.graph()).unwrap()))
            .collect();
        codes.sort();
        codes
    };
    assert_eq!(report.summary.minimal_breaking["ab:2"], expected);
    assert_within(t0.elapsed(), Duration::from_secs(600), "obstruction survey");
    println!(
        "[criterion 4] PASS {} corpus graphs, breaking(ab:2) == catalog minor, mined set == catalog ({:?})",
        report.summary.total,
        t0.elapsed()
    );
}

/// Criterion 5: over the same corpus, breaking over the trivial variety is
/// equivalent to not being a tree with loops. Zero disagreements.
#[test]
fn acceptance_5_trivial_variety_characterization() {
    let report = survey::run_survey(4, 5, &[VarietySpec::Trivial]).unwrap();
    assert_eq!(report.summary.disagreements, 0);
    let corpus = corpus_4_5();
    for (g, r) in corpus.iter().zip(&report.records) {
        assert_eq!(
            r.verdicts[0].breaking,
            !minors::is_tree_with_loops(g),
            "graph {}",
            r.code
        );
    }
    println!(
        "[criterion 5] PASS breaking(trivial) == not tree-with-loops on {} graphs",
        report.summary.total
    );
}

/// Criterion 6: on every two-edge-connected corpus graph, the exact core
/// and the Abelian content have identical edge sets and the vertex gap is
/// isolated in the core (ab:2, ab:3, and free-Abelian values obtained by
/// lifting realizations); the destination always lies in the content. The
/// bridge fixture exhibits a strict gap containing the bridge.
#[test]
fn acceptance_6_content_vs_core() {
    let mut arrows_checked = 0usize;
    for g in corpus_4_5() {
        if !g.is_two_edge_connected() {
            continue;
        }
        let mut values: Vec<ArrowValue> = Vec::new();
        for n in [2, 3] {
            values.extend(enumerate_values(&g, VarietySpec::AbExp(n)).unwrap());
        }
        // free-Abelian sample: lift each mod-2 value through a realization
        for x in enumerate_values(&g, VarietySpec::AbExp(2)).unwrap() {
            let p = realize_value(&g, &x).unwrap();
            values.push(ArrowValue::of_path(&g, VarietySpec::AbFree, &p));
        }
        for x in values {
            let r = content::report(&g, &x).unwrap();
            assert_eq!(r.content.edges, r.core.edges, "{}", x.display(&g));
            assert!(r.content.vertices.is_subset_of(r.core.vertices));
            assert!(r.content.contains_vertex(x.dst()), "{}", x.display(&g));
            for extra in r.core.vertices.difference(r.content.vertices).iter() {
                assert!(
                    g.incident_edges(VertexId(extra))
                        .all(|e| !r.core.contains_edge(e)),
                    "{}: extra vertex {extra} not isolated",
                    x.display(&g)
                );
            }
            arrows_checked += 1;
        }
    }
    // the bridge makes content and core genuinely different
    let g = fixtures::bridgecyc();
    let x = named_arrow(&g, VarietySpec::AbFree, "0", "0", &[("f", 1), ("g", 1)]);
    let r = content::report(&g, &x).unwrap();
    let e = g.find_edge("e").unwrap();
    assert!(!r.content.contains_edge(e));
    assert!(r.core.contains_edge(e));
    assert!(r.content.is_subset_of(r.core));
    assert_ne!(r.content, r.core);
    println!("[criterion 6] PASS content/core gap law on {arrows_checked} arrows; bridge fixture strict");
}

/// Criterion 7: on all graphs with at most 3 vertices and 4 edges —
/// (i) the exact core equals the enumeration oracle at length 2|E|+4 for
/// all ab:2 arrows; (ii) the realizability rule agrees with bounded path
/// enumeration over every closed subgraph; (iii) the worklist avoidance
/// closure agrees with iterated pairwise products. Zero mismatches.
#[test]
fn acceptance_7_oracle_suites() {
    let corpus = corpus_3_4();
    let mut cores = 0usize;
    let mut realizability = 0usize;
    let mut closures = 0usize;
    for g in &corpus {
        let budget = 2 * g.edge_count() + 4;
        let arrows = enumerate_values(g, VarietySpec::AbExp(2)).unwrap();
        for x in &arrows {
            let exact = content::exact_core(g, x).unwrap();
            let oracle = content::core_by_enumeration(g, x, budget).unwrap();
            assert_eq!(exact, oracle, "(i) {} on {:?}", x.display(g), g);
            cores += 1;
        }

        // every closed subgraph of g
        let nv = g.vertex_count();
        let ne = g.edge_count();
        for vmask in 0u64..1 << nv {
            for emask in 0u64..1 << ne {
                let allowed = Subgraph {
                    vertices: bits(vmask),
                    edges: bits(emask),
                };
                if !allowed.is_closed(g) {
                    continue;
                }
                for x in &arrows {
                    let fast = realizable_in(g, &allowed, x).unwrap();
                    let slow =
                        oracle::realizable_by_enumeration(g, &allowed, x, budget).unwrap();
                    assert_eq!(
                        fast,
                        slow,
                        "(ii) {} inside {} of {:?}",
                        x.display(g),
                        allowed.display(g),
                        g
                    );
                    realizability += 1;
                }
            }
        }

        let table = ArrowTable::new(g, VarietySpec::AbExp(2)).unwrap();
        let stabilized = table.clone().run_to_fixpoint();
        for t in [&table, &stabilized] {
            for atom in g.atoms() {
                assert_eq!(
                    t.avoidance_closure(atom),
                    oracle::naive_avoidance_closure(t, atom),
                    "(iii) atom {atom:?} on {g:?}"
                );
                closures += 1;
            }
        }
    }
    println!(
        "[criterion 7] PASS oracles agree: {cores} cores, {realizability} realizability checks, {closures} closures"
    );
}

fn bits(mask: u64) -> bpe_core::AtomSet {
    let mut s = bpe_core::AtomSet::EMPTY;
    for i in 0..64 {
        if mask >> i & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

/// Criterion 8: monotonicity and closure laws over the corpus — breaking
/// transports along connected subgraphs and single-edge redirections,
/// holding at ab:2 transports to ab:4, a breaking one-step contraction
/// forces breaking (so any catalog minor does), and every mined minimal
/// breaking graph is loopless and two-edge-connected. Zero violations.
#[test]
fn acceptance_8_monotonicity_and_closure_laws() {
    let corpus = corpus_4_5();
    let cache = VerdictCache::new(VarietySpec::AbExp(2));

    for g in &corpus {
        let breaking = cache.is_breaking(g).unwrap();

        // subgraph closure: a breaking connected sub-part forces breaking
        let full = Subgraph::full(g);
        let mut subparts: Vec<Graph> = Vec::new();
        for e in g.edge_ids() {
            let mut s = full;
            s.edges.remove(e.0);
            for comp in g.components(&s) {
                subparts.push(g.extract(&comp).unwrap().0);
            }
        }
        if g.vertex_count() > 1 {
            for v in g.vertices() {
                let (h, _) = g.edit(EditOp::DeleteVertex(v)).unwrap();
                for comp in h.components(&Subgraph::full(&h)) {
                    subparts.push(h.extract(&comp).unwrap().0);
                }
            }
        }
        for s in subparts {
            if s.vertex_count() > 0 && cache.is_breaking(&s).unwrap() {
                assert!(breaking, "subgraph law violated on {g:?}");
            }
        }

        // redirection invariance, decided directly on the redirected graph
        for e in g.edge_ids() {
            let (h, _) = g.edit(EditOp::RedirectEdge(e)).unwrap();
            let redirected = decide(&h, VarietySpec::AbExp(2)).unwrap().is_breaking();
            assert_eq!(breaking, redirected, "redirection law violated on {g:?}");
        }

        // variety monotonicity ab:2 -> ab:4
        if !breaking {
            assert!(
                !decide(g, VarietySpec::AbExp(4)).unwrap().is_breaking(),
                "variety monotonicity violated on {g:?}"
            );
        }

        // contraction transport: a breaking one-step contraction lifts
        for e in g.edge_ids() {
            if g.is_loop(e) {
                continue;
            }
            let (m, _) = g.edit(EditOp::ContractEdge(e)).unwrap();
            if cache.is_breaking(&m).unwrap() {
                assert!(breaking, "contraction transport violated on {g:?}");
            }
        }

        // catalog minor forces breaking
        if minors::has_forbidden_minor(g).unwrap().is_forbidden() {
            assert!(breaking, "catalog-minor law violated on {g:?}");
        }
    }

    // minimality structure: mined minimal graphs are loopless and
    // two-edge-connected
    let mut minimal = 0usize;
    for g in &corpus {
        if survey::is_minimal_breaking(g, &cache).unwrap() {
            assert!(g.edge_ids().all(|e| !g.is_loop(e)), "loop in minimal {g:?}");
            assert!(g.is_two_edge_connected(), "bridge in minimal {g:?}");
            minimal += 1;
        }
    }
    assert_eq!(minimal, 2);
    println!("[criterion 8] PASS closure and monotonicity laws on {} graphs", corpus.len());
}

/// Criterion 9: for every corpus graph holding at ab:2, the stabilized
/// table passes the dual-premorphism checks (single-edge arrows map to
/// their own edge; anchors of composites stay inside the union of the
/// factors' anchors).
///
/// KNOWN RED. The union law holds on every holder, and the single-edge
/// law holds on every loopless holder, but the single-edge law is
/// mathematically unsatisfiable as soon as the graph has both a loop and
/// an independent cycle: conjugating the loop arrow to a vertex `q` on a
/// cycle yields an arrow `(q, {l:1}, q)` whose core is disconnected (the
/// loop and its forced approach edges sit away from `q`, and `q`'s own
/// incident edges are avoidable around the cycle), so its anchor
/// collapses to the bare vertex `{q}`; factoring the loop arrow through
/// that conjugate then strips the loop from its own arrow's anchor, and
/// the cycle's two routes force the same collapse in any assignment
/// satisfying the union law, so no identity-restricting dual premorphism
/// exists at all on these graphs even though every arrow keeps its
/// destination. The refinement is oracle-verified on such graphs
/// (criterion 7), so this is a defect of the claimed law on loop-plus-
/// cycle graphs, not of the engine.
#[test]
fn acceptance_9_dual_premorphism_contract() {
    let mut holders = 0usize;
    let mut failures: Vec<String> = Vec::new();
    let mut loop_plus_cycle_holders: Vec<String> = Vec::new();
    for g in corpus_4_5() {
        match decide(&g, VarietySpec::AbExp(2)).unwrap() {
            Verdict::Breaking { .. } => continue,
            Verdict::Holds { table, .. } => {
                holders += 1;
                let code = minors::code_string(&minors::canonical_code(&g).unwrap());
                let has_loop = g.edge_ids().any(|e| g.is_loop(e));
                let nonloop = g.edge_ids().filter(|&e| !g.is_loop(e)).count();
                let has_cycle = nonloop >= g.vertex_count();
                if has_loop && has_cycle {
                    loop_plus_cycle_holders.push(code.clone());
                }
                if !premorphism_check(&table).unwrap() {
                    failures.push(code);
                }
            }
        }
    }
    assert!(holders > 0);
    assert!(
        failures.is_empty(),
        "premorphism contract fails on {} of {holders} holding graphs; \
         the failure set {} exactly the holders carrying both a loop and \
         an independent cycle, where the single-edge law is unsatisfiable \
         (see the test doc comment): {}",
        failures.len(),
        if failures == loop_plus_cycle_holders {
            "is"
        } else {
            "is NOT"
        },
        failures.join(", ")
    );
    println!("[criterion 9] PASS dual premorphism contract on {holders} holding graphs");
}
