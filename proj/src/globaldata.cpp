#include "shavis/globaldata.hpp"
#include "shavis/errors.hpp"

namespace shavis {

GlobalData assemble_global_data(const CurveQ& curve, const AssembleOptions& opts) {
    GlobalData g;
    auto [minimal, iso] = minimal_model(curve);
    g.curve = minimal;
    g.label = curve.label();
    g.locals = local_data(minimal);
    g.conductor = 1;
    for (const LocalData& d : g.locals) {
        Int pf = 1;
        for (int i = 0; i < d.f_p; ++i) pf *= d.p;
        g.conductor *= pf;
        if (d.kind == ReductionKind::additive) g.additive_primes.push_back(d.p);
    }
    g.semistable = g.additive_primes.empty();
    g.tamagawa = tamagawa_product(g.locals);
    g.torsion = torsion_subgroup(minimal);
    g.optimal = opts.optimal;

    RankSource src;
    src.table_rank = opts.table_rank;
    src.allow_analytic = !opts.table_rank.has_value() || opts.recompute_analytic_rank;
    if (opts.recompute_analytic_rank) src.table_rank.reset();
    src.tol = opts.tol;
    g.rank = rank_of(minimal, src);

    if (opts.want_analytic) {
        AnalyticData ad;
        ad.omega = real_period(minimal, 1e-14);
        std::optional<int> w;
        if (g.semistable) {
            w = root_number_semistable(minimal);
        } else if (opts.table_rank) {
            // additive reduction: infer w from the ingested rank parity
            w = (*opts.table_rank % 2 == 0) ? 1 : -1;
        }
        if (w) {
            ad.root_number = *w;
            ad.l_value = l_value(minimal, 0, opts.tol, w);
            if (*w == -1) ad.l_prime = l_value(minimal, 1, opts.tol, w);
            ad.precision = opts.tol;
            g.analytic = ad;
            if (g.rank.rank == 0)
                g.sha = conjectural_sha(minimal, g.rank, w);
        }
    }
    return g;
}

} // namespace shavis
