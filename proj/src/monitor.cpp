#include "nsbox/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

namespace nsbox {

namespace {

// Shared refined-grid samples for one velocity snapshot.
struct RefinedSamples {
    std::array<int, 3> shape;
    std::array<Tensor3, 3> v;                 // component values
    std::array<std::array<Tensor3, 3>, 3> dv; // dv[j][i] = d_i v_j
    Tensor3 mag;                              // |v|
    double vmax = 0.0;

    explicit RefinedSamples(const VelocityField& field)
        : shape(field.domain().refined_shape()), mag(shape) {
        for (int j = 0; j < 3; ++j) {
            v[j] = values_on_shape(field[j], shape);
            for (int i = 0; i < 3; ++i)
                dv[j][i] = values_on_shape(differentiate(field[j], i), shape);
        }
        for (std::size_t q = 0; q < mag.size(); ++q) {
            const double m = std::sqrt(v[0].raw()[q] * v[0].raw()[q] +
                                       v[1].raw()[q] * v[1].raw()[q] +
                                       v[2].raw()[q] * v[2].raw()[q]);
            mag.raw()[q] = m;
            vmax = std::max(vmax, m);
        }
    }

    std::size_t size() const { return mag.size(); }
};

std::pair<double, double> dissipation_from_samples(const RefinedSamples& s, const BoxDomain& d,
                                                   double theta, double threshold_rel) {
    const double thresh = threshold_rel * s.vmax;
    const std::size_t n = s.size();
    std::vector<double> t1(n), t2(n);
    for (std::size_t q = 0; q < n; ++q) {
        const double m = s.mag.raw()[q];
        double grad2 = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i)
                grad2 += s.dv[j][i].raw()[q] * s.dv[j][i].raw()[q];
        t2[q] = grad2 * ((m == 0.0) ? 0.0 : std::pow(m, theta - 2.0));
        if (m <= thresh) {
            t1[q] = 0.0;
            continue;
        }
        double sum2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            double vi_dot = 0.0; // sum_j v_j d_i v_j
            for (int j = 0; j < 3; ++j)
                vi_dot += s.v[j].raw()[q] * s.dv[j][i].raw()[q];
            sum2 += vi_dot * vi_dot;
        }
        const double w = 0.5 * theta * std::pow(m, 0.5 * theta - 2.0);
        t1[q] = w * w * sum2;
    }
    const double measure = d.volume() / static_cast<double>(n);
    return {pairwise_sum(t1) * measure, pairwise_sum(t2) * measure};
}

} // namespace

double theta_energy(const VelocityField& v, double theta) {
    if (!(theta > 3.0))
        throw std::invalid_argument("theta_energy: theta must exceed 3");
    const auto shape = v.domain().refined_shape();
    Tensor3 mag = velocity_magnitude(v, shape);
    for (double& x : mag.raw())
        x = std::pow(x, theta);
    return quadrature(v.domain(), mag);
}

std::pair<double, double> dissipation_terms(const VelocityField& v, double theta,
                                            double threshold_rel) {
    if (!(theta > 3.0))
        throw std::invalid_argument("dissipation_terms: theta must exceed 3");
    RefinedSamples s(v);
    return dissipation_from_samples(s, v.domain(), theta, threshold_rel);
}

double eq44_rhs(const VelocityField& v, double theta, double c_emp) {
    const double exponent = theta * (theta - 1.0) / (theta - 3.0);
    return c_emp * std::pow(lp_norm_refined(v, theta), exponent);
}

double theta_rate_assembled(const VelocityField& v, double theta, double nu,
                            double threshold_rel) {
    RefinedSamples s(v);
    const BoxDomain& d = v.domain();
    auto [d1, d2] = dissipation_from_samples(s, d, theta, threshold_rel);

    ScalarField p = pressure_from_velocity(v);
    std::vector<double> terms(s.size(), 0.0);
    for (int i = 0; i < 3; ++i) {
        Tensor3 gp = values_on_shape(differentiate(p.data, i), s.shape);
        for (std::size_t q = 0; q < s.size(); ++q)
            terms[q] += gp.raw()[q] * s.v[i].raw()[q];
    }
    for (std::size_t q = 0; q < s.size(); ++q) {
        const double m = s.mag.raw()[q];
        terms[q] *= (m == 0.0) ? 0.0 : std::pow(m, theta - 2.0);
    }
    const double pressure_term =
        pairwise_sum(terms) * d.volume() / static_cast<double>(s.size());

    return -nu * (d2 + 4.0 * (theta - 2.0) / (theta * theta) * d1) - pressure_term;
}

ConstantsSnapshot estimate_constants(const BoxDomain& d, const std::vector<double>& s_values,
                                     const std::vector<double>& theta_values, int corpus_size,
                                     std::uint64_t seed0, int kmax, int threads) {
    if (corpus_size < 1)
        throw std::invalid_argument("estimate_constants: corpus must be non-empty");
    ConstantsSnapshot snap;
    snap.extents = d.extents();
    snap.resolution = d.resolution();
    snap.corpus_size = corpus_size;
    snap.corpus_seed0 = seed0;
    snap.corpus_kmax = kmax;

    struct Item {
        std::map<double, double> press, sob;
    };
    std::vector<Item> items(corpus_size);

    auto work = [&](int idx) {
        InitialCondition ic;
        ic.id = "random_bandlimited";
        ic.kmax = kmax;
        VelocityField v = initial_condition(ic, d, seed0 + static_cast<std::uint64_t>(idx));
        ScalarField p = pressure_from_velocity(v);
        for (double s : s_values) {
            const double v2s = lp_norm_refined(v, 2.0 * s);
            items[idx].press[s] = lp_norm_refined(p, s) / (v2s * v2s);
        }
        for (double theta : theta_values) {
            auto [d1, d2] = dissipation_terms(v, theta);
            (void)d2;
            const double n3t = lp_norm_refined(v, 3.0 * theta);
            items[idx].sob[theta] = (d1 > 0.0) ? std::pow(n3t, theta) / d1 : 0.0;
        }
    };

    if (threads <= 1) {
        for (int i = 0; i < corpus_size; ++i)
            work(i);
    } else {
        std::vector<std::future<void>> futs;
        std::atomic<int> next{0};
        for (int t = 0; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, [&] {
                for (int i = next.fetch_add(1); i < corpus_size; i = next.fetch_add(1))
                    work(i);
            }));
        for (auto& f : futs)
            f.get();
    }

    // deterministic aggregation order
    for (double s : s_values) {
        double best = 0.0;
        for (const auto& it : items)
            best = std::max(best, it.press.at(s));
        snap.pressure_constant[s] = best;
    }
    for (double theta : theta_values) {
        double best = 0.0;
        for (const auto& it : items)
            best = std::max(best, it.sob.at(theta));
        snap.sobolev_constant[theta] = best;
    }
    return snap;
}

double gronwall_composite_constant(double theta, double kappa, double c_press, double c_sob) {
    if (!(kappa > 0.0))
        throw std::invalid_argument("gronwall_composite_constant: kappa must be positive");
    const double g1 = 2.0 * theta / (3.0 + theta);
    const double g2 = 2.0 * theta / (theta - 3.0);
    const double prefactor = theta * (theta - 2.0) *
                             std::pow(theta * theta / 4.0, 1.5 / theta) * c_press *
                             std::pow(c_sob, 1.5 / theta);
    return std::pow(kappa * g1, -g2 / g1) / g2 * std::pow(prefactor, g2);
}

std::vector<ChainLink> chain_audit(const VelocityField& v, const ScalarField& p, double theta,
                                   const ExponentSet& e, double nu, double kappa,
                                   double c_press, double c_sob) {
    (void)nu;
    const BoxDomain& d = v.domain();
    RefinedSamples s(v);
    Tensor3 pv = values_on_shape(p.data, s.shape);
    const std::size_t n = s.size();
    const double measure = d.volume() / static_cast<double>(n);

    // shared quadrature ingredients
    std::vector<double> t_p2v(n), t_pgv(n);
    for (std::size_t q = 0; q < n; ++q) {
        const double m = s.mag.raw()[q];
        const double mp = (m == 0.0) ? 0.0 : std::pow(m, theta - 2.0);
        double grad2 = 0.0;
        for (int j = 0; j < 3; ++j)
            for (int i = 0; i < 3; ++i)
                grad2 += s.dv[j][i].raw()[q] * s.dv[j][i].raw()[q];
        t_p2v[q] = pv.raw()[q] * pv.raw()[q] * mp;
        t_pgv[q] = std::abs(pv.raw()[q]) * std::sqrt(grad2) * mp;
    }
    const double I_p2v = pairwise_sum(t_p2v) * measure;
    const double I_pgv = pairwise_sum(t_pgv) * measure;
    auto [D1, D2] = dissipation_from_samples(s, d, theta, 1e-14);

    auto norm_of = [&](const Tensor3& vals, double pn) {
        return lp_norm_values(d, vals, pn);
    };
    const double np_2l1 = norm_of(pv, 2.0 * e.lambda1);
    const double nv_4l1 = norm_of(s.mag, 4.0 * e.lambda1);
    const double nv_t2l2 = norm_of(s.mag, (theta - 2.0) * e.lambda2);
    const double nv_t = norm_of(s.mag, theta);
    const double nv_3t = norm_of(s.mag, 3.0 * theta);

    std::vector<ChainLink> links;
    auto push = [&](std::string name, double lhs, double rhs, bool cf) {
        const double slack = rhs - lhs;
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        links.push_back({std::move(name), lhs, rhs, slack, cf, slack >= -1e-10 * scale});
    };

    push("cauchy_schwarz", (theta - 2.0) * I_pgv,
         (theta - 2.0) * std::sqrt(I_p2v * D2), true);
    push("hoelder_split", I_p2v,
         np_2l1 * np_2l1 * std::pow(nv_t2l2, theta - 2.0), true);
    push("pressure_estimate", np_2l1, c_press * nv_4l1 * nv_4l1, false);
    push("interpolation", nv_4l1 * nv_4l1 * std::pow(nv_t2l2, 0.5 * (theta - 2.0)),
         std::pow(nv_t, e.w1) * std::pow(nv_3t, e.w2), true);
    push("sobolev_poincare", std::pow(nv_3t, theta), c_sob * D1, false);
    push("pointwise_cauchy", D1, 0.25 * theta * theta * D2, true);

    const double A = theta * (theta - 2.0) * std::pow(0.25 * theta * theta, 1.5 / theta) *
                     c_press * std::pow(c_sob, 1.5 / theta) * std::pow(nv_t, e.w1);
    push("young", A * std::pow(D2, 1.0 / e.gamma1),
         kappa * D2 + std::pow(kappa * e.gamma1, -e.gamma2 / e.gamma1) / e.gamma2 *
                          std::pow(A, e.gamma2),
         true);

    const double c_comp = gronwall_composite_constant(theta, kappa, c_press, c_sob);
    push("eq44_assembled",
         theta * (theta - 2.0) * std::sqrt(I_p2v * D2) - kappa * D2,
         c_comp * std::pow(nv_t, e.gronwall_exponent), false);
    return links;
}

std::vector<EnvelopePoint> gronwall_envelope(const std::vector<NormSample>& lp_series,
                                             double p, double q, double c_emp) {
    validate_serrin_pair(p, q);
    if (lp_series.empty())
        throw std::invalid_argument("gronwall_envelope: empty series");
    if (!(c_emp >= 0.0))
        throw std::invalid_argument("gronwall_envelope: negative constant");
    const double v0p = std::pow(lp_series.front().value, p);
    std::vector<EnvelopePoint> out;
    out.reserve(lp_series.size());
    double acc = 0.0; // integral of ||v||_p^q
    for (std::size_t i = 0; i < lp_series.size(); ++i) {
        if (i > 0) {
            const double dt = lp_series[i].t - lp_series[i - 1].t;
            acc += 0.5 * dt *
                   (std::pow(lp_series[i - 1].value, q) + std::pow(lp_series[i].value, q));
        }
        EnvelopePoint pt;
        pt.t = lp_series[i].t;
        pt.envelope = std::exp(c_emp * acc) * v0p;
        pt.measured = std::pow(lp_series[i].value, p);
        pt.ok = pt.measured <= pt.envelope * (1.0 + 1e-12);
        out.push_back(pt);
    }
    return out;
}

double spacetime_53p_norm(const std::vector<NormSample>& l53p_series, double p) {
    if (l53p_series.empty())
        throw std::invalid_argument("spacetime_53p_norm: empty trajectory");
    const double e = 5.0 * p / 3.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < l53p_series.size(); ++i) {
        const double dt = l53p_series[i].t - l53p_series[i - 1].t;
        acc += 0.5 * dt *
               (std::pow(l53p_series[i - 1].value, e) + std::pow(l53p_series[i].value, e));
    }
    return std::pow(acc, 1.0 / e);
}

RunOutput run_monitored(const SimConfig& cfg, const std::optional<ConstantsSnapshot>& constants,
                        const std::function<void(const CriteriaRecord&)>& sink,
                        const std::function<void(const VelocityField&, int)>& checkpoints) {
    cfg.validate();
    const BoxDomain domain(cfg.extents, cfg.resolution);
    VelocityField v0 = initial_condition(cfg.ic, domain, cfg.seed);

    RunOutput out;
    out.initial_cfl = cfl_number(v0, cfg.dt);

    if (constants) {
        out.constants = *constants;
    } else {
        std::vector<double> s_values = cfg.monitor_s;
        s_values.push_back(2.0 * cfg.lambda1);
        std::vector<double> theta_values = cfg.monitor_thetas;
        theta_values.push_back(cfg.serrin_p);
        out.constants = estimate_constants(domain, s_values, theta_values,
                                           /*corpus_size=*/16, /*seed0=*/1000,
                                           cfg.ic.kmax > 0 ? cfg.ic.kmax : 8);
    }
    const double c_press = out.constants.pressure_constant.at(2.0 * cfg.lambda1);
    const double c_sob = out.constants.sobolev_constant.at(cfg.serrin_p);
    out.kappa = cfg.kappa_fraction * cfg.nu * cfg.serrin_p;
    out.envelope_constant =
        gronwall_composite_constant(cfg.serrin_p, out.kappa, c_press, c_sob);

    auto energy_of = [](const VelocityField& v) {
        double e = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double c = l2_norm_spectral(v[i]);
            e += c * c;
        }
        return 0.5 * e;
    };

    double prev_energy = 0.0;
    double drift_max = 0.0;
    double div_bound_max = 0.0;
    double initial_lp = 0.0;
    double serrin_q_acc = 0.0; // integral ||v||_p^q over record times
    double prev_record_t = 0.0, prev_record_lpq = 0.0;
    bool first = true;
    std::vector<NormSample> l53p_series;

    auto emit = [&](const VelocityField& v, double t) {
        CriteriaRecord rec;
        rec.t = t;
        rec.kinetic_energy = energy_of(v);

        for (double theta : cfg.monitor_thetas) {
            ThetaBlock b;
            b.theta = theta;
            b.energy = theta_energy(v, theta);
            auto [d1, d2] = dissipation_terms(v, theta);
            b.d1 = d1;
            b.d2 = d2;
            b.norm_3theta = lp_norm_refined(v, 3.0 * theta);
            rec.thetas.push_back(b);
        }

        if (!cfg.monitor_s.empty()) {
            ScalarField p = pressure_from_velocity(v);
            const double pl2 = l2_norm_spectral(p.data);
            for (double s : cfg.monitor_s) {
                SBlock b;
                b.s = s;
                const double v2s = lp_norm_refined(v, 2.0 * s);
                b.ratio = (v2s > 0.0) ? lp_norm_refined(p, s) / (v2s * v2s) : 0.0;
                b.duality_residual = (pl2 > 0.0) ? duality_identity_residual(p, s) : 0.0;
                rec.pressures.push_back(b);
            }
        }

        rec.serrin_lp = lp_norm_refined(v, cfg.serrin_p);
        if (first) {
            initial_lp = rec.serrin_lp;
        } else {
            serrin_q_acc += 0.5 * (t - prev_record_t) *
                            (prev_record_lpq + std::pow(rec.serrin_lp, cfg.serrin_q));
        }
        prev_record_t = t;
        prev_record_lpq = std::pow(rec.serrin_lp, cfg.serrin_q);
        rec.serrin_acc =
            (serrin_q_acc > 0.0) ? std::pow(serrin_q_acc, 1.0 / cfg.serrin_q) : 0.0;
        rec.envelope = std::exp(out.envelope_constant * serrin_q_acc) *
                       std::pow(initial_lp, cfg.serrin_p);
        rec.envelope_ok =
            std::pow(rec.serrin_lp, cfg.serrin_p) <= rec.envelope * (1.0 + 1e-12);

        rec.l53p = lp_norm_refined(v, 5.0 * cfg.serrin_p / 3.0);
        l53p_series.push_back({t, rec.l53p});

        Tensor3 divv = inverse(divergence(v).data);
        rec.div_linf = 0.0;
        for (double x : divv.raw())
            rec.div_linf = std::max(rec.div_linf, std::abs(x));
        rec.div_linf = std::max(rec.div_linf, div_bound_max);
        auto br = boundary_residuals(v);
        rec.bc_residual =
            std::max({br.normal_velocity, br.tangential_curl, br.tangential_stress});

        rec.energy_step_drift = drift_max;
        rec.energy_monotone = drift_max <= 1e-10;
        rec.divergence_ok = rec.div_linf < 1e-10;
        rec.boundary_ok = rec.bc_residual < 1e-10;

        out.all_audits_pass = out.all_audits_pass && rec.energy_monotone &&
                              rec.envelope_ok && rec.divergence_ok && rec.boundary_ok;
        out.records.push_back(rec);
        if (sink)
            sink(rec);
        drift_max = 0.0;
        div_bound_max = 0.0;
        first = false;
    };

    out.steps = run_time_loop(
        cfg, v0,
        [&](const VelocityField& v, const StepCallbackInfo& info) {
            const double e = energy_of(v);
            if (info.index > 0) {
                const double drift = (e - prev_energy) / std::max(prev_energy, 1e-300);
                drift_max = std::max(drift_max, drift);
                div_bound_max = std::max(div_bound_max, divergence_coefficient_bound(v));
            }
            prev_energy = e;
            if (checkpoints && cfg.checkpoint_interval > 0 && info.index > 0 &&
                info.index % cfg.checkpoint_interval == 0)
                checkpoints(v, info.index);
            if (info.index % cfg.output_cadence == 0 || info.is_last)
                emit(v, info.t);
        });

    out.spacetime_norm = spacetime_53p_norm(l53p_series, cfg.serrin_p);
    return out;
}

} // namespace nsbox
