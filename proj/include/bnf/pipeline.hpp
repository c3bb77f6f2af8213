#ifndef BNF_PIPELINE_HPP
#define BNF_PIPELINE_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <bnf/basis.hpp>
#include <bnf/birkhoff.hpp>
#include <bnf/cohomology.hpp>
#include <bnf/errors.hpp>
#include <bnf/flow.hpp>

namespace bnf
{

using json = nlohmann::ordered_json;

enum class VariableBasis { real, complex };

// ---------------------------------------------------------------------
// Serialization. A term is {"exponents": [i, j, k, l], "coeff": c} where
// c is "p/q" for a real coefficient and ["p/q", "r/s"] for re + i im.
// Real-basis exponents follow x1^i xi1^j x2^k xi2^l; complex-basis
// exponents follow z1, z2, conj z1, conj z2.

inline json coeff_to_json(const GaussianRational &c)
{
    if (c.is_real()) {
        return to_string(c.re);
    }
    return json::array({to_string(c.re), to_string(c.im)});
}

template <typename Key>
json terms_to_json(const Polynomial4<Key> &p)
{
    json arr = json::array();
    for (const auto &[k, c] : p) {
        arr.push_back({{"exponents", {k[0], k[1], k[2], k[3]}}, {"coeff", coeff_to_json(c)}});
    }
    return arr;
}

inline json series_to_json(const FormalSeries &f, VariableBasis basis)
{
    return basis == VariableBasis::real ? terms_to_json(to_real_basis(f)) : terms_to_json(f);
}

inline json bivariate_to_json(const BivariateSeries &g)
{
    json arr = json::array();
    for (const auto &[k, c] : g) {
        arr.push_back({{"exponents", {k.k, k.l}}, {"coeff", to_string(c)}});
    }
    return arr;
}

namespace detail
{

inline Rational parse_rational_field(const json &v, const std::string &ctx)
{
    if (!v.is_string()) {
        throw ParseError(ctx + ": coefficients must be exact rational strings like \"p/q\", got " + v.dump());
    }
    try {
        return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument &e) {
        throw ParseError(ctx + ": " + e.what());
    }
}

inline GaussianRational parse_coeff(const json &v, const std::string &ctx)
{
    if (v.is_array()) {
        if (v.size() != 2) {
            throw ParseError(ctx + ": complex coefficient must be [\"re\", \"im\"]");
        }
        return {parse_rational_field(v[0], ctx), parse_rational_field(v[1], ctx)};
    }
    return parse_rational_field(v, ctx);
}

template <typename Key>
Polynomial4<Key> parse_terms(const json &arr, const std::string &name)
{
    if (!arr.is_array()) {
        throw ParseError("'" + name + "' must be an array of terms");
    }
    Polynomial4<Key> p;
    for (std::size_t t = 0; t < arr.size(); ++t) {
        const std::string ctx = name + " term #" + std::to_string(t);
        const auto &term = arr[t];
        if (!term.is_object() || !term.contains("exponents") || !term.contains("coeff")) {
            throw ParseError(ctx + ": expected {\"exponents\": [...], \"coeff\": ...}");
        }
        const auto &e = term["exponents"];
        if (!e.is_array() || e.size() != 4) {
            throw ParseError(ctx + ": 'exponents' must hold four integers");
        }
        std::array<unsigned, 4> ex{};
        for (std::size_t v = 0; v < 4; ++v) {
            if (!e[v].is_number_integer() || e[v].get<long long>() < 0 || e[v].get<long long>() > 64) {
                throw ParseError(ctx + ": exponents must be integers in [0, 64]");
            }
            ex[v] = e[v].get<unsigned>();
        }
        p.add_term(Key{ex[0], ex[1], ex[2], ex[3]}, parse_coeff(term["coeff"], ctx));
    }
    return p;
}

inline FormalSeries parse_function(const json &doc, const std::string &name, VariableBasis basis)
{
    if (!doc.contains(name)) {
        throw ParseError("missing '" + name + "'");
    }
    if (basis == VariableBasis::real) {
        return to_complex_basis(parse_terms<RealIndex>(doc[name], name));
    }
    return parse_terms<MultiIndex>(doc[name], name);
}

} // namespace detail

// Parses and validates a system definition:
//   {"variables": "real" | "complex", "f1": [terms], "f2": [terms], "order": N}
inline SystemSpec parse_system_json(const json &doc)
{
    if (!doc.is_object()) {
        throw ParseError("top-level value must be an object");
    }
    VariableBasis basis = VariableBasis::real;
    if (doc.contains("variables")) {
        const auto &v = doc["variables"];
        if (v == "real") {
            basis = VariableBasis::real;
        } else if (v == "complex") {
            basis = VariableBasis::complex;
        } else {
            throw ParseError("'variables' must be \"real\" or \"complex\"");
        }
    }
    if (!doc.contains("order") || !doc["order"].is_number_integer() || doc["order"].get<long long>() < 0) {
        throw ParseError("'order' must be a nonnegative integer");
    }
    SystemSpec spec;
    spec.order = doc["order"].get<unsigned>();
    spec.f1 = detail::parse_function(doc, "f1", basis);
    spec.f2 = detail::parse_function(doc, "f2", basis);

    if (spec.order < 2) {
        throw ValidationError("InvalidOrder", "order must be >= 2");
    }
    for (const auto &[name, f] : {std::pair{"f1", &spec.f1}, std::pair{"f2", &spec.f2}}) {
        if (!is_real_valued(*f)) {
            throw ValidationError("NonRealInput", std::string(name) + " is not real-valued");
        }
    }
    try {
        extract_leading(spec.f1, spec.f2);
    } catch (const error &e) {
        throw ValidationError(e.name(), e.what());
    }
    return spec;
}

inline SystemSpec parse_system(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ParseError(path + ": " + e.what());
    }
    return parse_system_json(doc);
}

// ---------------------------------------------------------------------
// Pipeline.

struct PipelineConfig {
    std::string input_path;
    // 0 keeps the order stored in the input file.
    unsigned order = 0;
    bool verify_numeric = false;
    unsigned samples = 16;
    double radius = 0.1;
    std::uint64_t seed = 1;
    std::string output_path;
    QuadratureConfig quad;

    void validate() const
    {
        if (order == 1) {
            throw ValidationError("InvalidOrder", "order must be >= 2");
        }
        if (!(radius > 0)) {
            throw ValidationError("InvalidConfig", "radius must be > 0");
        }
        if (samples < 1) {
            throw ValidationError("InvalidConfig", "samples must be >= 1");
        }
        try {
            quad.validate();
        } catch (const std::invalid_argument &e) {
            throw ValidationError("InvalidConfig", e.what());
        }
    }
};

struct Report {
    json doc;
    bool pass = false;
    // 0 pass, 1 criterion failure.
    int exit_code = 1;

    std::string dump() const
    {
        return doc.dump(2) + "\n";
    }
};

namespace detail
{

inline json matrix_to_json(const LeadingMatrix &M)
{
    return {{"a", to_string(M.a)}, {"b", to_string(M.b)}, {"c", to_string(M.c)}, {"d", to_string(M.d)}};
}

inline json flow_report_to_json(const TaylorFlowReport &r)
{
    json j = {{"order", r.order},
              {"radii", r.radii},
              {"errors", r.errors},
              {"degenerate", r.degenerate},
              {"required_slope", r.order + 0.7},
              {"pass", r.pass}};
    j["slope"] = std::isnan(r.slope) ? json(nullptr) : json(r.slope);
    return j;
}

inline json out_of_scope_stages()
{
    return json::array({
        {{"stage", "flat Morse lemma (Upsilon)"}, {"status", "out_of_scope"}},
        {{"stage", "Borel summation of A and g"}, {"status", "out_of_scope"}},
        {{"stage", "Darboux-type correction (Phi)"}, {"status", "out_of_scope"}},
    });
}

} // namespace detail

// extract_leading -> reduce_leading -> commutation check ->
// birkhoff_normalize -> optional numeric verification. The report is a
// deterministic function of the configuration.
inline Report run_pipeline(const PipelineConfig &cfg, const SystemSpec &input)
{
    Report rep;
    json &doc = rep.doc;
    json criteria = json::array();
    bool all_pass = true;
    auto criterion = [&](const std::string &name, bool ok, json detail = nullptr) {
        json c = {{"name", name}, {"pass", ok}};
        if (!detail.is_null()) {
            c["detail"] = std::move(detail);
        }
        criteria.push_back(std::move(c));
        all_pass = all_pass && ok;
    };

    SystemSpec spec = input;
    if (cfg.order != 0) {
        spec.order = cfg.order;
    }
    const unsigned N = spec.order;

    doc["config"] = {{"input", cfg.input_path},
                     {"order", N},
                     {"verify_numeric", cfg.verify_numeric},
                     {"samples", cfg.samples},
                     {"radius", cfg.radius},
                     {"seed", cfg.seed},
                     {"nodes", cfg.quad.nodes},
                     {"fd_step", cfg.quad.fd_step}};
    json stages = json::array();

    try {
        const auto M = extract_leading(spec.f1, spec.f2);
        doc["leading_matrix"] = detail::matrix_to_json(M);
        stages.push_back({{"stage", "extract_leading"}, {"status", "done"}});

        const auto reduced = reduce_leading(spec, M);
        stages.push_back({{"stage", "reduce_leading"}, {"status", "done"}});

        const auto comm = commutation_residual(reduced.f1.truncated(N), reduced.f2.truncated(N), N);
        doc["commutation"] = {{"through_degree", N},
                              {"nonzero_terms", comm.size()},
                              {"lowest_degree", comm.empty() ? json(nullptr) : json(comm.low_degree())}};
        criterion("commutation", comm.empty());
        if (!comm.empty()) {
            throw NonCommuting("{f1, f2} has " + std::to_string(comm.size())
                               + " nonzero coefficient(s), lowest at degree " + std::to_string(comm.low_degree()));
        }
        stages.push_back({{"stage", "commutation_check"}, {"status", "done"}});

        const auto nf = birkhoff_normalize(spec);
        stages.push_back({{"stage", "birkhoff_normalize"}, {"status", "done"}});

        json ledger = json::array();
        for (const auto &l : nf.ledger) {
            ledger.push_back({{"degree", l.degree},
                              {"r1_terms", l.r1_terms},
                              {"r2_terms", l.r2_terms},
                              {"generator_terms", l.generator_terms},
                              {"g1_terms", l.g1_terms},
                              {"g2_terms", l.g2_terms}});
        }
        doc["ledger"] = std::move(ledger);
        doc["generator"] = {{"variables", "real"}, {"terms", series_to_json(nf.A, VariableBasis::real)}};
        doc["g1"] = bivariate_to_json(nf.g1);
        doc["g2"] = bivariate_to_json(nf.g2);
        const auto [o1, o2] = original_normal_forms(nf);
        doc["g1_original"] = bivariate_to_json(o1);
        doc["g2_original"] = bivariate_to_json(o2);
        doc["residuals"] = {{"f1_nonzero_terms", nf.residual1_terms}, {"f2_nonzero_terms", nf.residual2_terms}};
        criterion("birkhoff_residual_zero", nf.residual1_terms == 0 && nf.residual2_terms == 0);

        if (cfg.verify_numeric) {
            json numeric;
            const std::vector<double> radii{cfg.radius, cfg.radius / 2, cfg.radius / 4, cfg.radius / 8};
            TaylorFlowOptions opt;
            opt.samples = cfg.samples;
            opt.seed = cfg.seed;
            const auto red1 = reduced.f1.truncated(N), red2 = reduced.f2.truncated(N);
            const auto t1 = taylor_flow_check(nf.A, red1, N, radii, opt);
            const auto t2 = taylor_flow_check(nf.A, red2, N, radii, opt);
            numeric["taylor_flow"] = {{"f1", detail::flow_report_to_json(t1)}, {"f2", detail::flow_report_to_json(t2)}};
            criterion("taylor_flow_slope", t1.pass && t2.pass);

            std::mt19937_64 rng(cfg.seed);
            std::uniform_real_distribution<double> unit(0.0, 1.0);

            // Action integral against q2 on the unit ball.
            double worst_action = 0;
            for (unsigned s = 0; s < cfg.samples; ++s) {
                const auto z = random_sphere_point(rng, std::sqrt(unit(rng)));
                worst_action = std::max(worst_action, std::abs(action_integral(z) - q2_value(z)));
            }
            numeric["action_integral"] = {{"max_abs_delta", worst_action}, {"tolerance", 1e-10}};
            criterion("action_integral", worst_action <= 1e-10);

            // Psi on the higher-order parts of the reduced pair.
            const auto u1 = ScalarField::from_series(red1.from_degree(3));
            const auto u2 = ScalarField::from_series(red2.from_degree(3));
            const auto Y = psi_right_inverse(u1, u2);
            double worst_psi = 0;
            for (unsigned s = 0; s < cfg.samples; ++s) {
                const auto z = random_sphere_point(rng, cfg.radius * (0.5 + unit(rng)));
                const auto [d1, d2] = contract_dq(z, Y(z));
                const double a = u1(z), b = u2(z);
                const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
                worst_psi = std::max({worst_psi, std::abs(d1 - a) / scale, std::abs(d2 - b) / scale});
            }
            numeric["psi_right_inverse"] = {{"max_rel_delta", worst_psi}, {"tolerance", 1e-12}};
            criterion("psi_right_inverse", worst_psi <= 1e-12);

            // Transport time brackets off the axes.
            ScalarField T([](const PhasePoint &p) { return transport_time(p); });
            double worst_t1 = 0, worst_t2 = 0;
            for (unsigned s = 0; s < cfg.samples; ++s) {
                PhasePoint z;
                do {
                    z = random_sphere_point(rng, 0.2 + unit(rng));
                } while (std::min(std::abs(z.z1()), std::abs(z.z2())) < 0.1);
                worst_t1 = std::max(worst_t1, std::abs(bracket_fd(T, q1_field(), z, cfg.quad.fd_step) - 1));
                worst_t2 = std::max(worst_t2, std::abs(bracket_fd(T, q2_field(), z, cfg.quad.fd_step)));
            }
            numeric["transport_time"] = {{"max_abs_delta_T_q1", worst_t1},
                                         {"max_abs_delta_T_q2", worst_t2},
                                         {"tolerance", 1e-6}};
            criterion("transport_time", worst_t1 <= 1e-6 && worst_t2 <= 1e-6);
            doc["numeric"] = std::move(numeric);
        }
    } catch (const error &e) {
        doc["error"] = {{"name", e.name()}, {"message", e.what()}};
        criterion("pipeline_completed", false);
    }

    for (auto &s : detail::out_of_scope_stages()) {
        stages.push_back(s);
    }
    doc["stages"] = std::move(stages);
    doc["criteria"] = std::move(criteria);
    rep.pass = all_pass;
    rep.exit_code = all_pass ? 0 : 1;
    doc["status"] = all_pass ? "pass" : "fail";
    return rep;
}

// Parses cfg.input_path, runs the pipeline, and writes the report to
// cfg.output_path when it is set.
inline Report run_pipeline(const PipelineConfig &cfg)
{
    cfg.validate();
    const auto spec = parse_system(cfg.input_path);
    auto rep = run_pipeline(cfg, spec);
    if (!cfg.output_path.empty()) {
        std::ofstream out(cfg.output_path);
        if (!out) {
            throw std::runtime_error("cannot write '" + cfg.output_path + "'");
        }
        out << rep.dump();
    }
    return rep;
}

} // namespace bnf

#endif
