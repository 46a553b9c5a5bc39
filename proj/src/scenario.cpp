#include "qswitch/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qswitch/fridge.hpp"
#include "qswitch/monitoring.hpp"
#include "qswitch/verify.hpp"
#include "parallel.hpp"

namespace qswitch {

namespace {

// ---------------------------------------------------------------------------
// small string utilities

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return parts;
}

double parse_number(const std::string& token, const std::string& key) {
    if (token == "inf" || token == "+inf" || token == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(token, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': cannot parse number '" + token + "'");
    }
    if (consumed != token.size()) {
        throw ConfigError("key '" + key + "': trailing characters in number '" + token + "'");
    }
    if (std::isnan(value)) {
        throw ConfigError("key '" + key + "': nan is not a valid value");
    }
    return value;
}

int parse_integer(const std::string& token, const std::string& key) {
    const double value = parse_number(token, key);
    if (!std::isfinite(value) || std::abs(value) > 1e9 ||
        std::abs(value - std::llround(value)) > 1e-9) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + token + "'");
    }
    return static_cast<int>(std::llround(value));
}

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.15g", value);
    return std::string(buffer);
}

// ---------------------------------------------------------------------------
// CSV output

class CsvWriter {
  public:
    explicit CsvWriter(const std::filesystem::path& path) : out_(path) {
        if (!out_) {
            throw ConfigError("cannot open output file '" + path.string() + "'");
        }
    }

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

std::string cell(double value) { return format_number(value); }
std::string cell(int value) { return std::to_string(value); }
std::string cell(const std::optional<double>& value) {
    return value.has_value() ? format_number(*value) : std::string();
}

void echo_parameters(CsvWriter& csv, const ScenarioConfig& config) {
    csv.comment("scenario: " + std::string(to_string(config.scenario())));
    for (const auto& [key, value] : config.entries()) {
        if (key == "scenario.type" || key == "scenario.output") continue;
        csv.comment(key + " = " + value);
    }
    csv.comment("units: hbar = k_B = 1; energies in the config's frequency units; "
                "entropies and information in nats");
}

// ---------------------------------------------------------------------------
// channel / state value grammar

std::vector<Complex> parse_complex_entries(const std::string& text, const std::string& key) {
    std::vector<Complex> entries;
    std::size_t i = 0;
    const auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_space();
    while (i < text.size()) {
        if (text[i] != '(') {
            throw ConfigError("key '" + key + "': expected '(re,im)' entries");
        }
        const std::size_t close = text.find(')', i);
        if (close == std::string::npos) {
            throw ConfigError("key '" + key + "': unterminated complex entry");
        }
        const auto parts = split(std::string_view(text).substr(i + 1, close - i - 1), ',');
        if (parts.size() != 2) {
            throw ConfigError("key '" + key + "': complex entry needs exactly re,im");
        }
        entries.emplace_back(parse_number(parts[0], key), parse_number(parts[1], key));
        i = close + 1;
        skip_space();
    }
    return entries;
}

Matrix square_matrix_from_entries(const std::vector<Complex>& entries, const std::string& key) {
    const auto dim = static_cast<Eigen::Index>(std::llround(std::sqrt(double(entries.size()))));
    if (dim < 1 || static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim) != entries.size()) {
        throw ConfigError("key '" + key + "': entry count is not a perfect square");
    }
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = entries[static_cast<std::size_t>(r * dim + c)];
        }
    }
    return m;
}

// Values take the form `name` or `name(arg, ...)`. Returns {name, args}.
std::pair<std::string, std::string> split_call(const std::string& text, const std::string& key) {
    const std::size_t open = text.find('(');
    if (open == std::string::npos) return {trim(text), std::string()};
    if (text.back() != ')') {
        throw ConfigError("key '" + key + "': expected closing ')' in '" + text + "'");
    }
    return {trim(text.substr(0, open)), text.substr(open + 1, text.size() - open - 2)};
}

Observable observable_from_name(const std::string& name, const std::string& key) {
    if (name == "z" || name == "sigma_z") return Observable::pauli_z();
    if (name == "x" || name == "sigma_x") return Observable::pauli_x();
    throw ConfigError("key '" + key + "': unknown observable '" + name +
                      "' (use sigma_z or sigma_x)");
}

KrausChannel parse_channel_spec(const std::string& text, const std::string& key) {
    const auto [name, args] = split_call(trim(text), key);
    if (name == "identity") {
        return KrausChannel::identity(2);
    }
    if (name == "dephasing_z") return dephasing_channel(Observable::pauli_z());
    if (name == "dephasing_x") return dephasing_channel(Observable::pauli_x());
    if (name == "dephasing") {
        return dephasing_channel(observable_from_name(trim(args), key));
    }
    if (name == "monitoring") {
        const auto parts = split(args, ',');
        if (parts.size() != 2) {
            throw ConfigError("key '" + key + "': monitoring(observable, epsilon)");
        }
        return monitoring_channel(observable_from_name(parts[0], key),
                                  MonitoringStrength(parse_number(parts[1], key)));
    }
    if (name == "fridge") {
        const auto parts = split(args, ',');
        if (parts.size() != 2) {
            throw ConfigError("key '" + key + "': fridge(beta_cold, omega_s)");
        }
        const DensityMatrix theta = thermal_qubit(parse_number(parts[0], key),
                                                  parse_number(parts[1], key), Axis::z);
        return fridge_kraus(theta, pauli_unitaries());
    }
    if (name == "kraus") {
        std::vector<Matrix> ops;
        for (const std::string& op_text : split(args, ';')) {
            const auto entries = parse_complex_entries(op_text, key);
            if (entries.empty()) {
                throw ConfigError("key '" + key + "': empty Kraus operator");
            }
            ops.push_back(square_matrix_from_entries(entries, key));
        }
        return KrausChannel::from(std::move(ops));
    }
    throw ConfigError("key '" + key + "': unknown channel '" + name +
                      "' (identity, dephasing, monitoring, fridge, kraus)");
}

DensityMatrix parse_state_spec(const std::string& text, const std::string& key) {
    const auto [name, args] = split_call(trim(text), key);
    if (name == "zero") return DensityMatrix::pure(ket_zero());
    if (name == "one") return DensityMatrix::pure(ket_one());
    if (name == "plus") return DensityMatrix::pure(ket_plus());
    if (name == "minus") return DensityMatrix::pure(ket_minus());
    if (name == "mixed") return DensityMatrix::maximally_mixed(2);
    if (name == "thermal") {
        const auto parts = split(args, ',');
        if (parts.size() != 3 || (parts[2] != "x" && parts[2] != "z")) {
            throw ConfigError("key '" + key + "': thermal(beta, omega, x|z)");
        }
        return thermal_qubit(parse_number(parts[0], key), parse_number(parts[1], key),
                             parts[2] == "x" ? Axis::x : Axis::z);
    }
    if (name == "matrix") {
        return DensityMatrix::from(square_matrix_from_entries(parse_complex_entries(args, key), key));
    }
    throw ConfigError("key '" + key + "': unknown state '" + name +
                      "' (zero, one, plus, minus, mixed, thermal, matrix)");
}

// ---------------------------------------------------------------------------
// scenario runners

void matrix_rows(CsvWriter& csv, const std::string& record, const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            csv.row({record, cell(int(r)), cell(int(c)), cell(m(r, c).real()), cell(m(r, c).imag())});
        }
    }
}

void scalar_row(CsvWriter& csv, const std::string& record, double value) {
    csv.row({record, "0", "0", cell(value), "0"});
}

void run_switch_map(const ScenarioConfig& config, CsvWriter& csv) {
    const KrausChannel m = parse_channel_spec(config.get_string("params.channel_m"), "params.channel_m");
    const KrausChannel n = parse_channel_spec(config.get_string("params.channel_n"), "params.channel_n");
    const DensityMatrix rho_s = parse_state_spec(config.get_string("params.rho_s"), "params.rho_s");
    const DensityMatrix rho_c = parse_state_spec(
        config.get_string_or("params.rho_c", "plus"), "params.rho_c");

    const DensityMatrix joint = switch_state(m, n, rho_s, rho_c);
    const SwitchDecomposition dec = decompose(m, n, rho_s);
    const PostSelection plus = post_select(dec, Outcome::plus);
    const PostSelection minus = post_select(dec, Outcome::minus);

    csv.row({"record", "row", "col", "re", "im"});
    matrix_rows(csv, "joint", joint.matrix());
    matrix_rows(csv, "a_pp", dec.a_pp);
    matrix_rows(csv, "a_pm", dec.a_pm);
    matrix_rows(csv, "a_mp", dec.a_mp);
    matrix_rows(csv, "a_mm", dec.a_mm);
    matrix_rows(csv, "a_def", dec.a_def);
    matrix_rows(csv, "a_indef", dec.a_indef);
    if (plus.conditional_state) matrix_rows(csv, "conditional_plus", plus.conditional_state->matrix());
    if (minus.conditional_state) matrix_rows(csv, "conditional_minus", minus.conditional_state->matrix());
    scalar_row(csv, "p_plus", plus.probability);
    scalar_row(csv, "p_minus", minus.probability);
    scalar_row(csv, "tr_a_indef", dec.tr_a_indef());
}

void run_sweep_b(const ScenarioConfig& config, CsvWriter& csv) {
    const double gtau = config.get_double("params.g_tau");
    const std::vector<int> n_list = config.get_int_list("params.n");
    const std::vector<double> betas = config.get_grid_or("params.beta_e", {0.0});
    const std::vector<double> omegas = config.get_grid_or("params.omega", {1.0});
    if (!(gtau > 0.0 && gtau < 0.5)) {
        throw InvariantError("key 'params.g_tau': must lie in (0, 0.5)");
    }

    csv.row({"n", "beta_e", "omega", "b_def_plus", "b_def_minus", "b_indef_plus",
             "b_indef_minus", "abs_b_indef"});
    for (const int n : n_list) {
        for (const double beta : betas) {
            for (const double omega : omegas) {
                if (n < 0) throw InvariantError("key 'params.n': must be nonnegative");
                if (!(beta >= 0)) throw InvariantError("key 'params.beta_e': must be nonnegative");
                if (!(omega > 0)) throw InvariantError("key 'params.omega': must be positive");
                const double f_e = (beta == 0.0) ? 0.0 : std::tanh(0.5 * beta * omega);
                const BCoefficients b = BCoefficients::evaluate(n, gtau, f_e);
                csv.row({cell(n), cell(beta), cell(omega), cell(b.b_def_plus),
                         cell(b.b_def_minus), cell(b.b_indef_plus), cell(b.b_indef_minus),
                         cell(std::abs(b.b_indef_plus))});
            }
        }
    }
}

void run_monitoring_info(const ScenarioConfig& config, CsvWriter& csv) {
    CollisionParams base;
    base.omega = config.get_double_or("params.omega", 1.0);
    base.g = config.get_double("params.g_tau");
    base.tau = 1.0;
    if (!(base.g > 0.0 && base.g < 0.5)) {
        throw InvariantError("key 'params.g_tau': must lie in (0, 0.5)");
    }
    base.h_s = -0.5 * config.get_double_or("params.omega_s", 1.0) * pauli_x();

    const std::vector<double> eps_grid = config.get_grid("params.epsilon");
    const std::vector<int> n_list = config.get_int_list("params.n");
    const std::vector<double> beta_list = config.get_grid("params.beta");

    const auto table = information_curve(eps_grid, n_list, beta_list, base);
    csv.row({"epsilon", "n", "beta", "outcome", "p_post", "info_nats"});
    for (const InfoPoint& point : table) {
        csv.row({cell(point.eps), cell(point.n), cell(point.beta), to_string(point.outcome),
                 cell(point.p_post), cell(point.info_nats)});
    }
}

// omega / beta_cold read-outs are optional because some scenarios sweep
// those keys as grids instead of scalars.
FridgeParams fridge_params_from(const ScenarioConfig& config, bool scalar_omega,
                                bool scalar_beta_cold) {
    FridgeParams fp;
    fp.omega_s = config.get_double_or("params.omega_s", 1.0);
    if (scalar_omega) fp.omega = config.get_double_or("params.omega", 1.0);
    fp.beta_hot = config.get_double_or("params.beta_hot", 1.0);
    if (scalar_beta_cold) {
        fp.beta_cold = config.get_double_or("params.beta_cold", 1.5);
        if (!(fp.beta_cold > fp.beta_hot)) {
            throw InvariantError("key 'params.beta_cold': must exceed params.beta_hot");
        }
    }
    fp.g = config.get_double("params.g_tau");
    fp.tau = 1.0;
    if (!(fp.g > 0.0 && fp.g < 0.5)) {
        throw InvariantError("key 'params.g_tau': must lie in (0, 0.5)");
    }
    return fp;
}

void run_fridge_cop(const ScenarioConfig& config, CsvWriter& csv, unsigned threads) {
    const FridgeParams base = fridge_params_from(config, true, true);
    const std::vector<int> n_list = config.get_int_list("params.n");
    const std::vector<double> betas = config.get_grid("params.beta_e");

    struct Row {
        int n;
        double beta_e;
        std::optional<double> cop_n, cop_0, ratio;
    };
    std::vector<Row> rows(n_list.size() * betas.size());
    detail::parallel_for(rows.size(), threads, [&](std::size_t idx) {
        const int n = n_list[idx / betas.size()];
        const double beta_e = betas[idx % betas.size()];
        FridgeParams fp = base;
        fp.beta_e = beta_e;
        fp.n = n;
        const CycleReport now = cycle_report(fp);
        fp.n = 0;
        const CycleReport start = cycle_report(fp);
        Row row{n, beta_e, now.cop, start.cop, std::nullopt};
        if (now.cop && start.cop && *start.cop != 0.0) {
            row.ratio = *now.cop / *start.cop;
        }
        rows[idx] = row;
    });

    csv.row({"n", "beta_e", "cop_n", "cop_0", "cop_ratio"});
    for (const Row& row : rows) {
        csv.row({cell(row.n), cell(row.beta_e), cell(row.cop_n), cell(row.cop_0), cell(row.ratio)});
    }
}

void run_fridge_cop_prime(const ScenarioConfig& config, CsvWriter& csv, unsigned threads) {
    const FridgeParams base = fridge_params_from(config, false, true);
    const std::vector<int> n_list = config.get_int_list("params.n");
    const std::vector<double> omegas = config.get_grid("params.omega");

    struct Row {
        int n;
        double omega;
        std::optional<double> cop_prime_n, cop_prime_0, ratio;
    };
    std::vector<Row> rows(n_list.size() * omegas.size());
    detail::parallel_for(rows.size(), threads, [&](std::size_t idx) {
        const int n = n_list[idx / omegas.size()];
        const double omega = omegas[idx % omegas.size()];
        FridgeParams fp = base;
        fp.omega = omega;
        fp.beta_e = fp.beta_cold; // the control shares the cold bath here
        fp.n = n;
        const CycleReport now = cycle_report(fp);
        fp.n = 0;
        const CycleReport start = cycle_report(fp);
        Row row{n, omega, now.cop_prime, start.cop_prime, std::nullopt};
        if (now.cop_prime && start.cop_prime && *start.cop_prime != 0.0) {
            row.ratio = *now.cop_prime / *start.cop_prime;
        }
        rows[idx] = row;
    });

    csv.row({"n", "omega", "cop_prime_n", "cop_prime_0", "cop_prime_ratio"});
    for (const Row& row : rows) {
        csv.row({cell(row.n), cell(row.omega), cell(row.cop_prime_n), cell(row.cop_prime_0),
                 cell(row.ratio)});
    }
}

void run_refrigeration_region(const ScenarioConfig& config, CsvWriter& csv) {
    const double omega_s = config.get_double_or("params.omega_s", 1.0);
    const std::vector<double> beta_hot = config.get_grid("params.beta_hot");
    const std::vector<double> beta_cold = config.get_grid("params.beta_cold");

    const auto mask = refrigeration_region(beta_hot, beta_cold, omega_s);
    csv.row({"beta_hot", "beta_cold", "avg_heat_0", "refrigerating"});
    for (std::size_t i = 0; i < beta_hot.size(); ++i) {
        for (std::size_t j = 0; j < beta_cold.size(); ++j) {
            csv.row({cell(beta_hot[i]), cell(beta_cold[j]),
                     cell(avg_heat_closed_control(omega_s, beta_hot[i], beta_cold[j])),
                     mask[i * beta_cold.size() + j] ? "1" : "0"});
        }
    }
}

void run_control_heat(const ScenarioConfig& config, CsvWriter& csv) {
    FridgeParams base = fridge_params_from(config, false, false);
    base.n = config.get_int("params.n");
    const std::vector<double> omegas = config.get_grid("params.omega");
    const std::vector<double> beta_colds = config.get_grid("params.beta_cold");

    csv.row({"omega", "beta_cold", "q_n", "cooling"});
    for (const double omega : omegas) {
        for (const double beta_cold : beta_colds) {
            FridgeParams fp = base;
            fp.omega = omega;
            fp.beta_cold = beta_cold;
            fp.beta_e = beta_cold;
            const double q = control_heat(fp);
            csv.row({cell(omega), cell(beta_cold), cell(q), q > 0.0 ? "1" : "0"});
        }
    }
}

bool run_verify(const ScenarioConfig& config, CsvWriter& csv, const RunOptions& options) {
    VerifyOptions vopt;
    vopt.seed = options.seed;
    vopt.threads = options.threads;
    vopt.channel_pairs = config.get_int_or("params.channel_pairs", 50);
    vopt.log = options.log;

    csv.comment("seed = " + std::to_string(vopt.seed));
    const auto checks = run_verification(vopt);
    csv.row({"check", "cases", "worst", "bound", "comparator", "pass"});
    for (const VerifyCheck& check : checks) {
        csv.row({check.name, std::to_string(check.cases), cell(check.worst), cell(check.bound),
                 std::string(1, check.comparator), check.passed ? "1" : "0"});
    }
    return all_passed(checks);
}

} // namespace

// ---------------------------------------------------------------------------
// ScenarioConfig

const char* to_string(ScenarioType type) {
    switch (type) {
        case ScenarioType::switch_map: return "switch";
        case ScenarioType::sweep_b: return "sweep_b";
        case ScenarioType::monitoring_info: return "monitoring_info";
        case ScenarioType::fridge_cop: return "fridge_cop";
        case ScenarioType::fridge_cop_prime: return "fridge_cop_prime";
        case ScenarioType::refrigeration_region: return "refrigeration_region";
        case ScenarioType::control_heat: return "control_heat";
        case ScenarioType::verify: return "verify";
    }
    return "unknown";
}

ScenarioType scenario_type_from_name(const std::string& name) {
    for (const ScenarioType type :
         {ScenarioType::switch_map, ScenarioType::sweep_b, ScenarioType::monitoring_info,
          ScenarioType::fridge_cop, ScenarioType::fridge_cop_prime,
          ScenarioType::refrigeration_region, ScenarioType::control_heat, ScenarioType::verify}) {
        if (name == to_string(type)) return type;
    }
    throw ConfigError("key 'scenario.type': unknown scenario '" + name + "'");
}

std::vector<std::string> scenario_names() {
    return {"switch",           "sweep_b",
            "monitoring_info",  "fridge_cop",
            "fridge_cop_prime", "refrigeration_region",
            "control_heat",     "verify"};
}

ScenarioConfig ScenarioConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str(), path.string());
}

ScenarioConfig ScenarioConfig::parse_text(std::string_view text, const std::string& origin) {
    ScenarioConfig config;
    std::string section;
    std::size_t line_number = 0;
    std::istringstream stream{std::string(text)};
    std::string raw;
    while (std::getline(stream, raw)) {
        ++line_number;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty() || line.front() == ';') continue;
        const std::string where = origin + ":" + std::to_string(line_number);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected 'key = value'");
        }
        if (section.empty()) {
            throw ConfigError(where + ": key outside of any [section]");
        }
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == section + ".") throw ConfigError(where + ": empty key name");
        if (config.values_.count(key) != 0) {
            throw ConfigError(where + ": duplicate key '" + key + "'");
        }
        config.values_[key] = value;
    }

    config.type_ = scenario_type_from_name(config.get_string("scenario.type"));
    if (config.has("scenario.output")) {
        config.output_ = config.get_string("scenario.output");
    } else if (config.type_ != ScenarioType::verify) {
        throw ConfigError("key 'scenario.output': required for scenario '" +
                          std::string(to_string(config.type_)) + "'");
    } else {
        config.output_ = "verify_report.csv";
    }
    return config;
}

ScenarioConfig ScenarioConfig::make(ScenarioType type, std::filesystem::path output) {
    ScenarioConfig config;
    config.type_ = type;
    config.output_ = std::move(output);
    config.values_["scenario.type"] = to_string(type);
    config.values_["scenario.output"] = config.output_.string();
    return config;
}

bool ScenarioConfig::has(const std::string& key) const { return values_.count(key) != 0; }

std::string ScenarioConfig::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("key '" + key + "': missing");
    return it->second;
}

std::string ScenarioConfig::get_string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double ScenarioConfig::get_double(const std::string& key) const {
    return parse_number(get_string(key), key);
}

double ScenarioConfig::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int ScenarioConfig::get_int(const std::string& key) const {
    return parse_integer(get_string(key), key);
}

int ScenarioConfig::get_int_or(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> ScenarioConfig::get_grid(const std::string& key) const {
    const std::string value = get_string(key);
    std::vector<double> grid;
    for (const std::string& token : split(value, ',')) {
        const auto colons = std::count(token.begin(), token.end(), ':');
        if (colons == 0) {
            grid.push_back(parse_number(token, key));
            continue;
        }
        if (colons != 2) {
            throw ConfigError("key '" + key + "': ranges use start:step:stop");
        }
        const auto parts = split(token, ':');
        const double start = parse_number(parts[0], key);
        const double step = parse_number(parts[1], key);
        const double stop = parse_number(parts[2], key);
        if (!(step > 0.0) || !std::isfinite(step)) {
            throw ConfigError("key '" + key + "': range step must be positive");
        }
        if (!std::isfinite(start) || !std::isfinite(stop)) {
            throw ConfigError("key '" + key + "': range endpoints must be finite");
        }
        if (stop < start) {
            throw ConfigError("key '" + key + "': range stop precedes start");
        }
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (long k = 0; k < count; ++k) {
            grid.push_back(start + step * static_cast<double>(k));
        }
    }
    if (grid.empty()) throw ConfigError("key '" + key + "': empty grid");
    return grid;
}

std::vector<double> ScenarioConfig::get_grid_or(const std::string& key,
                                                std::vector<double> fallback) const {
    return has(key) ? get_grid(key) : std::move(fallback);
}

std::vector<int> ScenarioConfig::get_int_list(const std::string& key) const {
    const std::string value = get_string(key);
    std::vector<int> list;
    for (const std::string& token : split(value, ',')) {
        const std::size_t dots = token.find("..");
        if (dots == std::string::npos) {
            list.push_back(parse_integer(token, key));
            continue;
        }
        const int lo = parse_integer(trim(token.substr(0, dots)), key);
        const int hi = parse_integer(trim(token.substr(dots + 2)), key);
        if (hi < lo) throw ConfigError("key '" + key + "': range hi precedes lo");
        for (int k = lo; k <= hi; ++k) list.push_back(k);
    }
    if (list.empty()) throw ConfigError("key '" + key + "': empty list");
    return list;
}

std::vector<int> ScenarioConfig::get_int_list_or(const std::string& key,
                                                 std::vector<int> fallback) const {
    return has(key) ? get_int_list(key) : std::move(fallback);
}

// ---------------------------------------------------------------------------

bool run_scenario(const ScenarioConfig& config, const RunOptions& options) {
    const std::filesystem::path output =
        options.output_override.value_or(config.output_path());
    if (output.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(output.parent_path(), ec);
        // A bad path surfaces as a precise CsvWriter error below.
    }
    CsvWriter csv(output);
    echo_parameters(csv, config);

    switch (config.scenario()) {
        case ScenarioType::switch_map:
            run_switch_map(config, csv);
            return true;
        case ScenarioType::sweep_b:
            run_sweep_b(config, csv);
            return true;
        case ScenarioType::monitoring_info:
            run_monitoring_info(config, csv);
            return true;
        case ScenarioType::fridge_cop:
            run_fridge_cop(config, csv, options.threads);
            return true;
        case ScenarioType::fridge_cop_prime:
            run_fridge_cop_prime(config, csv, options.threads);
            return true;
        case ScenarioType::refrigeration_region:
            run_refrigeration_region(config, csv);
            return true;
        case ScenarioType::control_heat:
            run_control_heat(config, csv);
            return true;
        case ScenarioType::verify:
            return run_verify(config, csv, options);
    }
    throw ConfigError("unreachable scenario type");
}

} // namespace qswitch
