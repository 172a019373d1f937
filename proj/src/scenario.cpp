#include "gnum/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "gnum/errors.hpp"
#include "gnum/fixed_point.hpp"
#include "gnum/hahn_banach.hpp"
#include "gnum/solver.hpp"

namespace gnum {

using nlohmann::json;

namespace {

constexpr long kDefaultCheckK = 256;
constexpr long kDefaultDepth = 20;

void put(Report& r, const std::string& key, const std::string& value) {
    r.lines.push_back(key + " = " + value);
}

long resolve(const std::optional<long>& flag, const json& j, const char* key, long fallback) {
    if (flag) return *flag;
    if (j.contains(key)) return j.at(key).get<long>();
    return fallback;
}

Rat field_rat(const json& j, const char* key) {
    return rat_parse(j.at(key).get<std::string>());
}

RhoRule parse_rule(const json& j) {
    RhoRule rule;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "affine")
        rule.kind = RhoRule::Kind::affine;
    else if (kind == "harmonic")
        rule.kind = RhoRule::Kind::harmonic;
    else
        throw std::invalid_argument("rule kind must be affine or harmonic");
    rule.p = field_rat(j, "p");
    rule.q = field_rat(j, "q");
    return rule;
}

GenFrac parse_frac(const json& j) {
    if (j.is_string()) return GenFrac(parse_expression(j.get<std::string>()));
    return GenFrac(parse_expression(j.at("num").get<std::string>()),
                   j.contains("den") ? parse_expression(j.at("den").get<std::string>())
                                     : NormalForm::constant(Rat(1)));
}

std::vector<GenFrac> parse_frac_list(const json& j) {
    std::vector<GenFrac> out;
    for (const auto& e : j) out.push_back(parse_frac(e));
    return out;
}

std::string frac_str(const GenFrac& f) {
    std::string s = print_expression(f.num());
    if (!(f.den() == NormalForm::constant(Rat(1))))
        s = "(" + s + ") / (" + print_expression(f.den()) + ")";
    return s;
}

void run_intersect(const json& j, const ScenarioFlags& flags, Report& r) {
    long depth = resolve(flags.depth, j, "depth", kDefaultDepth);
    long check_k = resolve(flags.check_k, j, "check_k", kDefaultCheckK);
    long certify = resolve(flags.certify, j, "certify", 0);
    put(r, "kind", "intersect");
    put(r, "depth", std::to_string(depth));
    put(r, "check_k", std::to_string(check_k));

    NestedBallSequence seq = [&] {
        if (j.contains("balls")) {
            std::vector<DressedBall> balls;
            for (const auto& b : j.at("balls"))
                balls.push_back({parse_expression(b.at("center").get<std::string>()),
                                 field_rat(b, "rho")});
            return NestedBallSequence::from_list(std::move(balls));
        }
        const json& inc = j.at("increment");
        return NestedBallSequence::from_rule(parse_rule(j.at("rho")), field_rat(inc, "coeff"),
                                             parse_rule(inc.at("exponent")));
    }();
    if (depth > seq.max_depth()) throw precondition_error("depth exceeds ball list length");

    NestedCheck nested = check_nested(seq, depth);
    if (!nested.ok) {
        put(r, "nested", "fail");
        put(r, "fail_index", std::to_string(nested.fail_index));
        throw precondition_error("nesting fails at ball " + std::to_string(nested.fail_index) +
                                 ": " + nested.reason);
    }
    put(r, "nested", "ok");

    ProperModelChain chain = build_proper_models(seq, depth, check_k);
    put(r, "stages", std::to_string(chain.models.size()));
    {
        std::string rs;
        for (std::size_t s = 0; s < chain.retained.size(); ++s)
            rs += (s ? "," : "") + std::to_string(chain.retained[s]);
        put(r, "retained", rs);
    }

    NormalForm witness = chain.models.back().center.class_of();
    long verified = 0;
    for (long i = 1; i <= depth; ++i) {
        if (!seq.ball(i).contains(witness))
            throw verification_error("witness escapes ball " + std::to_string(i), i, 0);
        ++verified;
    }
    put(r, "memberships", std::to_string(verified));
    put(r, "witness", print_expression(witness));

    if (certify > 0) {
        LazyWitness lazy = intersect_diagonal(seq, check_k);
        for (long i = 1; i <= certify; ++i) {
            CertifyResult c = lazy.certify(i, check_k);
            if (!c.ok)
                throw verification_error(
                    "diagonal witness leaves model " + std::to_string(i) + " at index " +
                        std::to_string(c.fail_k),
                    i, c.fail_k);
            put(r, "certify_" + std::to_string(i),
                "ok [" + std::to_string(c.checked_from) + "," + std::to_string(c.checked_to) +
                    "]");
        }
    }
}

void run_hb(const json& j, Report& r) {
    put(r, "kind", "hb");
    ValueNorm bound = parse_norm(j.at("norm_bound").get<std::string>());
    LFunctional phi{parse_frac_list(j.at("phi"))};
    LVector a{parse_frac_list(j.at("a"))};
    std::vector<LVector> samples;
    for (const auto& s : j.at("samples")) samples.push_back({parse_frac_list(s)});
    std::vector<std::pair<LVector, GenFrac>> tv;
    if (j.contains("test_vectors"))
        for (const auto& t : j.at("test_vectors"))
            tv.push_back({LVector{parse_frac_list(t.at("z"))}, parse_frac(t.at("lambda"))});

    HBExtension ext = hb_extend(phi, bound, a, samples, tv);
    put(r, "balls", std::to_string(ext.family.balls.size()));
    {
        std::string order;
        for (std::size_t s = 0; s < ext.family.order.size(); ++s)
            order += (s ? "," : "") + std::to_string(ext.family.order[s]);
        put(r, "order", order);
    }
    put(r, "min_radius", ext.family.balls[ext.family.order.front()].radius.str());
    put(r, "alpha", frac_str(ext.alpha));
    put(r, "checked", std::to_string(ext.checked));
}

void run_fixpoint(const json& j, Report& r) {
    put(r, "kind", "fixpoint");
    AffineMap f{parse_expression(j.at("a").get<std::string>()),
                parse_expression(j.at("b").get<std::string>())};
    NormalForm x0 = j.contains("x0") ? parse_expression(j.at("x0").get<std::string>())
                                     : NormalForm();
    long steps = j.contains("steps") ? j.at("steps").get<long>() : 8;
    long order = j.contains("order") ? j.at("order").get<long>() : 5;
    put(r, "steps", std::to_string(steps));
    put(r, "order", std::to_string(order));

    IterationTrace trace = banach_iterate(f, x0, steps);
    for (long n = 0; n <= steps; ++n)
        put(r, "residual_" + std::to_string(n), trace.residuals[n].str());

    auto [xstar, residual] = affine_fixed_point(f, order);
    put(r, "xstar", print_expression(xstar));
    put(r, "xstar_residual", residual.str());
}

void run_check(const json& j, const ScenarioFlags& flags, Report& r) {
    put(r, "kind", "check");
    long window = resolve(flags.check_k, j, "window", kDefaultCheckK);
    put(r, "window", std::to_string(window));
    CNetPtr net = parse_cnet(j.at("net").get<std::string>());
    CondEResult res = check_condition_E(net, window);
    if (const auto* fail = std::get_if<CondEFailure>(&res)) {
        put(r, "clause", fail->clause == CondEClause::positivity     ? "positivity"
                         : fail->clause == CondEClause::monotonicity ? "monotonicity"
                                                                    : "valuation");
        throw precondition_error(fail->message());
    }
    const auto& cert = std::get<ConditionECertificate>(res);
    put(r, "checked_prefix", std::to_string(cert.checked_prefix));
    put(r, "monotone", cert.structural_monotone ? "structural" : "prefix");
    put(r, "valuation", rat_str(cert.val_lo));
}

}  // namespace

std::string Report::str() const {
    std::string out;
    for (const auto& line : lines) out += line + "\n";
    return out;
}

Report run_scenario_text(const std::string& json_text, const ScenarioFlags& flags) {
    Report r;
    try {
        json j = json::parse(json_text);
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "intersect")
            run_intersect(j, flags, r);
        else if (kind == "hb")
            run_hb(j, r);
        else if (kind == "fixpoint")
            run_fixpoint(j, r);
        else if (kind == "check")
            run_check(j, flags, r);
        else
            throw std::invalid_argument("unknown scenario kind: " + kind);
        put(r, "verdict", "VERIFIED");
        r.exit_code = 0;
    } catch (const precondition_error& e) {
        put(r, "error", e.what());
        put(r, "verdict", "PRECONDITION-FAILED");
        r.exit_code = 1;
    } catch (const verification_error& e) {
        put(r, "error", e.what());
        put(r, "first_failure",
            "(" + std::to_string(e.stage) + "," + std::to_string(e.index) + ")");
        put(r, "verdict", "PRECONDITION-FAILED");
        r.exit_code = 1;
    } catch (const unsupported_shape_error& e) {
        put(r, "error", e.what());
        put(r, "verdict", "PRECONDITION-FAILED");
        r.exit_code = 1;
    } catch (const std::exception& e) {
        put(r, "error", e.what());
        put(r, "verdict", "ERROR");
        r.exit_code = 2;
    }
    return r;
}

Report run_scenario(const std::string& path, const ScenarioFlags& flags) {
    std::ifstream in(path);
    if (!in) {
        Report r;
        put(r, "error", "cannot read " + path);
        put(r, "verdict", "ERROR");
        r.exit_code = 2;
        return r;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_scenario_text(buf.str(), flags);
}

}  // namespace gnum
