#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tta/experiments.hpp"
#include "tta/multivariate.hpp"
#include "tta/spectral.hpp"
#include "tta/univariate.hpp"

namespace {

// symbol spec strings: korobov:R | mask:R[:KAPPA] | exponent:S
tta::SymbolSpec parse_symbol_arg(const std::string& arg) {
    tta::SymbolSpec spec;
    std::string rest = arg;
    const auto cut = [&rest]() {
        const auto pos = rest.find(':');
        std::string head = rest.substr(0, pos);
        rest = pos == std::string::npos ? "" : rest.substr(pos + 1);
        return head;
    };
    spec.kind = cut();
    try {
        if (spec.kind == "korobov" || spec.kind == "mask") {
            spec.r = std::stod(cut());
            if (spec.kind == "mask" && !rest.empty()) spec.kappa = std::stod(cut());
        } else if (spec.kind == "exponent") {
            spec.s = std::stod(cut());
        } else {
            throw tta::ConfigError("unknown symbol kind '" + spec.kind + "'");
        }
    } catch (const std::logic_error&) {
        throw tta::ConfigError("malformed symbol spec '" + arg + "'");
    }
    if (!rest.empty()) throw tta::ConfigError("malformed symbol spec '" + arg + "'");
    return spec;
}

int run_kernel(const std::string& lambda_arg, const std::string& beta_arg, int m) {
    const tta::Symbol lambda = tta::make_symbol(parse_symbol_arg(lambda_arg));
    const tta::Symbol beta = tta::make_symbol(parse_symbol_arg(beta_arg));
    std::cout << tta::to_text(tta::build_Hm(lambda, beta, tta::make_theta(), m));
    return 0;
}

int run_approx(const std::string& config_path) {
    const tta::ExperimentConfig config = tta::load_config(config_path);
    const int m = config.m_list.front();
    if (config.d == 1) {
        const tta::Symbol lambda = tta::make_symbol(config.lambda);
        const tta::Symbol beta = tta::make_symbol(config.beta_set ? config.beta : config.lambda);
        const tta::HLambdaFunction F(
            tta::gen_g(config.g, 1, config.p, 2 * std::max<tta::Index>(m, 1)), lambda);
        const tta::TranslateApproximant A =
            tta::assemble_Q(F, beta, tta::make_theta(), m, config.tail_tol);
        std::cout << tta::approximant_to_text(A);
        return 0;
    }
    if (config.beta_set)
        throw tta::ConfigError("the multivariate construction fixes beta = lambda");
    const tta::Symbol lambda = tta::make_symbol(config.lambda);
    const tta::SpectralCoefficients g =
        tta::gen_g(config.g, config.d, config.p, 2 * std::max<tta::Index>(m, 1));
    const auto weights = tta::translate_representation(g, lambda, tta::make_theta(), m);
    std::cout.precision(17);
    for (const auto& [point, w] : weights) {
        for (const auto& [num, den] : point) std::cout << num << '/' << den << ' ';
        std::cout << w << '\n';
    }
    return 0;
}

int run_grid(int d, int m) {
    std::cout << tta::grid_to_text(tta::smolyak_grid(d, m));
    return 0;
}

int run_convergence(const std::string& config_path, bool multivariate) {
    const tta::ExperimentConfig config = tta::load_config(config_path);
    const tta::RateFitResult result =
        multivariate ? tta::run_multivariate(config) : tta::run_univariate(config);
    if (config.output.empty()) {
        std::cout << tta::to_csv(result);
        std::cerr << tta::to_json(result);
    } else {
        tta::emit(result, config.output);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"translate-based approximation of periodic functions"};
    app.require_subcommand(1);

    std::string lambda_arg, beta_arg, config_path;
    int m = 1, d = 1;
    bool multivariate = false;

    auto* kernel = app.add_subcommand("kernel", "dump the H_m reproducing coefficients");
    kernel->add_option("--lambda", lambda_arg, "class symbol, e.g. korobov:2")->required();
    kernel->add_option("--beta", beta_arg, "generator symbol, e.g. exponent:1")->required();
    kernel->add_option("-m", m, "order")->required()->check(CLI::PositiveNumber);

    auto* approx = app.add_subcommand("approx", "single run; dump the approximant");
    approx->add_option("--config", config_path, "JSON config file")->required();

    auto* grid = app.add_subcommand("grid", "dump the sparse grid and cardinalities");
    grid->add_option("-d", d, "dimension")->required()->check(CLI::PositiveNumber);
    grid->add_option("-m", m, "level")->required()->check(CLI::NonNegativeNumber);

    auto* conv = app.add_subcommand("convergence", "rate sweep; emit CSV/JSON");
    conv->add_option("--config", config_path, "JSON config file")->required();
    conv->add_flag("--multivariate", multivariate, "sweep levels of P_m instead of Q_m");

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernel->parsed()) return run_kernel(lambda_arg, beta_arg, m);
        if (approx->parsed()) return run_approx(config_path);
        if (grid->parsed()) return run_grid(d, m);
        return run_convergence(config_path, multivariate);
    } catch (const tta::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    }
}
