// Quick tour: evaluate the means at one pair, print the proven constants,
// run a small certification sweep, and locate a sharpness witness.

#include <cstdio>

#include "nsbounds/nsbounds.hpp"

int main() {
    using namespace nsbounds;

    const PositivePair pr = make_pair(1.0, 2.0);
    std::printf("pair a=%g b=%g x=%g\n\n", pr.a, pr.b, pr.x);

    for (MeanKind k : kAllMeanKinds) {
        if (k == MeanKind::GeneralizedLog) continue;
        std::printf("%-16s %.17g\n", std::string(mean_token(k)).c_str(),
                    eval_mean(k, pr));
    }
    std::printf("%-16s %.17g  (p = p0)\n\n", "gen-log",
                generalized_log_mean(constants().p0, pr));

    std::printf("constants:\n");
    const ConstantsTable& ct = constants();
    std::printf("  alpha=%.17g beta=%.17g\n", ct.alpha_thm11, ct.beta_thm11);
    std::printf("  lambda=%.17g mu=%.17g\n", ct.lambda_thm12, ct.mu_thm12);
    std::printf("  t*=%.17g p0=%.17g\n\n", ct.t_star, ct.p0);

    for (Family f : {Family::THM11, Family::THM12, Family::CHAIN}) {
        const SweepReport rep = sweep(f, 2000);
        std::printf("sweep %-9s total=%lld violations=%lld worst_margin=%.3e\n",
                    std::string(family_name(f)).c_str(), rep.total, rep.violations,
                    rep.worst_margin);
    }

    const ProbeResult probe = sharpness_probe(Family::THM11, Side::Upper, 1e-3);
    std::printf("\nperturbed upper exponent fails at x=%.17g (margin %.3e)\n",
                probe.witness.x, probe.check.margin);
    return 0;
}
