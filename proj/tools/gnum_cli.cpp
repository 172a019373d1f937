#include <CLI11.hpp>

#include <functional>
#include <iostream>

#include "gnum/errors.hpp"
#include "gnum/geometry.hpp"
#include "gnum/scenario.hpp"

using namespace gnum;

namespace {

int guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const precondition_error& e) {
        std::cout << "error = " << e.what() << "\n" << "verdict = PRECONDITION-FAILED\n";
        return 1;
    } catch (const verification_error& e) {
        std::cout << "error = " << e.what() << "\n"
                  << "first_failure = (" << e.stage << "," << e.index << ")\n"
                  << "verdict = PRECONDITION-FAILED\n";
        return 1;
    } catch (const unsupported_shape_error& e) {
        std::cout << "error = " << e.what() << "\n" << "verdict = PRECONDITION-FAILED\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << "error = " << e.what() << "\n" << "verdict = ERROR\n";
        return 2;
    }
}

int run_report(const std::string& path, const ScenarioFlags& flags,
               const char* expected_kind) {
    Report r = run_scenario(path, flags);
    // The kind-specific subcommands refuse scenarios of another kind.
    if (expected_kind && r.exit_code == 0) {
        std::string head = std::string("kind = ") + expected_kind;
        if (r.lines.empty() || r.lines.front() != head) {
            std::cout << "error = scenario kind mismatch, expected " << expected_kind << "\n"
                      << "verdict = ERROR\n";
            return 2;
        }
    }
    std::cout << r.str();
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact generalized-number calculator and ball-geometry verifier"};
    app.require_subcommand(1);

    std::string expr, expr2, net_text, rho_text, path;
    long check_k = 256;
    ScenarioFlags flags;
    long flag_check_k = 0, flag_depth = 0, flag_certify = 0;

    auto* eval = app.add_subcommand("eval", "Canonicalize an expression; print valuation and norm");
    eval->add_option("expr", expr, "expression")->required();

    auto* dist = app.add_subcommand("dist", "Sharp distance between two expressions");
    dist->add_option("a", expr, "first expression")->required();
    dist->add_option("b", expr2, "second expression")->required();

    auto* checke = app.add_subcommand("check-e", "Certify condition (E) for a scaling net");
    checke->add_option("net", net_text, "scaling net")->required();
    checke->add_option("--check-k", check_k, "verification window");

    auto* model = app.add_subcommand("model", "Default euclidean model of a sharp ball");
    model->add_option("center", expr, "ball center expression")->required();
    model->add_option("rho", rho_text, "ball radius exponent (rational)")->required();
    model->add_option("--check-k", check_k, "verification window");

    auto add_scenario_flags = [&](CLI::App* cmd, bool with_depth) {
        cmd->add_option("scenario", path, "scenario file (JSON)")->required();
        cmd->add_option("--check-k", flag_check_k, "verification window");
        if (with_depth) {
            cmd->add_option("--depth", flag_depth, "number of balls");
            cmd->add_option("--certify", flag_certify, "certify diagonal witness up to this model");
        }
    };
    auto* intersect = app.add_subcommand("intersect", "Run a nested-ball intersection scenario");
    add_scenario_flags(intersect, true);
    auto* hb = app.add_subcommand("hb", "Run a functional-extension scenario");
    add_scenario_flags(hb, false);
    auto* fixpoint = app.add_subcommand("fixpoint", "Run a fixed-point iteration scenario");
    add_scenario_flags(fixpoint, false);
    auto* run = app.add_subcommand("run", "Run a scenario of any kind");
    add_scenario_flags(run, true);

    CLI11_PARSE(app, argc, argv);

    if (flag_check_k > 0) flags.check_k = flag_check_k;
    if (flag_depth > 0) flags.depth = flag_depth;
    if (flag_certify > 0) flags.certify = flag_certify;

    if (eval->parsed())
        return guarded([&] {
            NormalForm x = parse_expression(expr);
            std::cout << "value = " << print_expression(x) << "\n";
            auto v = x.valuation();
            std::cout << "valuation = " << (v ? rat_str(*v) : "+inf") << "\n";
            std::cout << "norm = " << x.sharp_norm().str() << "\n";
        });
    if (dist->parsed())
        return guarded([&] {
            std::cout << distance(parse_expression(expr), parse_expression(expr2)).str()
                      << "\n";
        });
    if (checke->parsed())
        return guarded([&] {
            CondEResult res = check_condition_E(parse_cnet(net_text), check_k);
            if (const auto* fail = std::get_if<CondEFailure>(&res)) {
                std::cout << "FAIL: " << fail->message() << "\n";
                throw precondition_error(fail->message());
            }
            const auto& cert = std::get<ConditionECertificate>(res);
            std::cout << "PASS\n"
                      << "checked_prefix = " << cert.checked_prefix << "\n"
                      << "monotone = " << (cert.structural_monotone ? "structural" : "prefix")
                      << "\n";
        });
    if (model->parsed())
        return guarded([&] {
            DressedBall b{parse_expression(expr), rat_parse(rho_text)};
            EuclideanModel m = default_model(b);
            std::cout << "center = " << print_expression(m.center.class_of()) << "\n"
                      << "rho = " << rat_str(m.rho) << "\n"
                      << "cnet = " << m.cnet->str() << "\n";
            CondEResult res = check_condition_E(m.cnet, check_k);
            std::cout << "condition_e = "
                      << (std::holds_alternative<ConditionECertificate>(res) ? "PASS" : "FAIL")
                      << "\n";
        });
    if (intersect->parsed()) return run_report(path, flags, "intersect");
    if (hb->parsed()) return run_report(path, flags, "hb");
    if (fixpoint->parsed()) return run_report(path, flags, "fixpoint");
    return run_report(path, flags, nullptr);
}
