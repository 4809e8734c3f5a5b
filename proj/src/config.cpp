#include "nehari/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "nehari/expr.hpp"

namespace nehari {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string_view s) {
    s = trim(s);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        return std::string(s.substr(1, s.size() - 2));
    }
    return std::string(s);
}

template <typename T>
T parse_number(std::string_view text, const std::string& key) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ConfigError(fmt::format("config: invalid number '{}' for key '{}'", text, key));
    }
    return value;
}

template <typename T>
std::vector<T> parse_list(std::string_view text, const std::string& key) {
    std::vector<T> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(parse_number<T>(text.substr(start, end - start), key));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

template <typename T>
std::string format_list(const std::vector<T>& xs) {
    return fmt::format("{}", fmt::join(xs, ", "));
}

BoundaryKind parse_kind(const std::string& s) {
    if (s == "dirichlet") {
        return BoundaryKind::dirichlet;
    }
    if (s == "periodic") {
        return BoundaryKind::periodic;
    }
    throw ConfigError(fmt::format("config: domain must be 'dirichlet' or 'periodic', got '{}'", s));
}

void check_keys(const boost::property_tree::ptree& section, const std::string& name,
                const std::set<std::string>& allowed) {
    for (const auto& [key, child] : section) {
        if (!allowed.contains(key)) {
            throw ConfigError(fmt::format("config: unknown key '{}' in [{}]", key, name));
        }
    }
}

}  // namespace

DomainSpec ProblemSource::domain() const {
    if (kind == BoundaryKind::periodic) {
        return DomainSpec::periodic_torus(periods, points_per_cell);
    }
    std::vector<int> pts = points;
    if (pts.size() == 1 && lengths.size() > 1) {
        pts.assign(lengths.size(), points.front());
    }
    return DomainSpec::dirichlet_box(lengths, pts);
}

ProblemSpec ProblemSource::build() const {
    ProblemSpec spec;
    spec.domain = make_domain(domain());
    spec.q = q;
    spec.f1.terms = f1;
    spec.f2.terms = f2;
    spec.V1 = sample_expr(parse_expr(V1), spec.domain);
    spec.V2 = sample_expr(parse_expr(V2), spec.domain);
    spec.lambda = sample_expr(parse_expr(lambda), spec.domain);
    spec.delta = delta;
    return spec;
}

RunConfig default_bounded() { return RunConfig{}; }

RunConfig default_periodic() {
    RunConfig c;
    c.problem.kind = BoundaryKind::periodic;
    c.problem.periods = {16, 16};
    c.problem.points_per_cell = 16;
    c.solve.starts = 3;
    return c;
}

std::vector<PowerTerm> parse_terms(std::string_view text) {
    std::vector<PowerTerm> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        const std::string_view item = text.substr(start, end - start);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw ConfigError(fmt::format("config: nonlinearity term '{}' is not of the form a:p", trim(item)));
        }
        out.push_back({parse_number<double>(item.substr(0, colon), "term coefficient"),
                       parse_number<double>(item.substr(colon + 1), "term exponent")});
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

std::string format_terms(const std::vector<PowerTerm>& terms) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        out += fmt::format("{}{}:{}", i ? ", " : "", terms[i].coefficient, terms[i].exponent);
    }
    return out;
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"validate", "ground", "multiplicity", "fountain", "fibering", "decay"};
    return names;
}

RunConfig parse_config(std::string_view text) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(fmt::format("config: {} (line {})", e.message(), e.line()));
    }

    RunConfig c;
    for (const auto& [key, child] : tree) {
        if (key == "command") {
            c.command = unquote(child.data());
            if (std::find(command_names().begin(), command_names().end(), c.command) == command_names().end()) {
                throw ConfigError(fmt::format("config: unknown command '{}'", c.command));
            }
        } else if (key != "problem" && key != "solve" && key != "output") {
            throw ConfigError(fmt::format("config: unknown top-level key or section '{}'", key));
        }
    }

    if (const auto problem = tree.get_child_optional("problem")) {
        check_keys(*problem, "problem",
                   {"domain", "lengths", "points", "periods", "points_per_cell", "q", "f1", "f2", "V1", "V2", "lambda",
                    "delta", "u0", "v0"});
        auto& p = c.problem;
        for (const auto& [key, child] : *problem) {
            const std::string value = unquote(child.data());
            if (key == "domain") {
                p.kind = parse_kind(value);
            } else if (key == "lengths") {
                p.lengths = parse_list<double>(value, key);
            } else if (key == "points") {
                p.points = parse_list<int>(value, key);
            } else if (key == "periods") {
                p.periods = parse_list<int>(value, key);
            } else if (key == "points_per_cell") {
                p.points_per_cell = parse_number<int>(value, key);
            } else if (key == "q") {
                p.q = parse_number<double>(value, key);
            } else if (key == "f1") {
                p.f1 = parse_terms(value);
            } else if (key == "f2") {
                p.f2 = parse_terms(value);
            } else if (key == "V1") {
                p.V1 = value;
            } else if (key == "V2") {
                p.V2 = value;
            } else if (key == "lambda") {
                p.lambda = value;
            } else if (key == "delta") {
                p.delta = parse_number<double>(value, key);
            } else if (key == "u0") {
                p.u0 = value;
            } else if (key == "v0") {
                p.v0 = value;
            }
        }
        // Surface expression errors at load time.
        for (const std::string* e : {&p.V1, &p.V2, &p.lambda, &p.u0, &p.v0}) {
            if (!e->empty()) {
                try {
                    parse_expr(*e);
                } catch (const ParseError& err) {
                    throw ConfigError(fmt::format("config: expression '{}': {} at byte {}", *e, err.what(),
                                                  err.offset()));
                }
            }
        }
    }

    if (const auto solve = tree.get_child_optional("solve")) {
        check_keys(*solve, "solve",
                   {"max_iters", "grad_tol", "armijo_c1", "backtrack", "initial_step", "max_backtracks", "starts",
                    "seed", "recenter_every", "target_count", "collapse_budget", "sigma", "k_max",
                    "fibering_samples"});
        auto& s = c.solve;
        for (const auto& [key, child] : *solve) {
            const std::string value = unquote(child.data());
            if (key == "max_iters") {
                s.max_iters = parse_number<int>(value, key);
            } else if (key == "grad_tol") {
                s.grad_tol = parse_number<double>(value, key);
            } else if (key == "armijo_c1") {
                s.armijo_c1 = parse_number<double>(value, key);
            } else if (key == "backtrack") {
                s.backtrack = parse_number<double>(value, key);
            } else if (key == "initial_step") {
                s.initial_step = parse_number<double>(value, key);
            } else if (key == "max_backtracks") {
                s.max_backtracks = parse_number<int>(value, key);
            } else if (key == "starts") {
                s.starts = parse_number<int>(value, key);
            } else if (key == "seed") {
                s.seed = parse_number<std::uint64_t>(value, key);
            } else if (key == "recenter_every") {
                s.recenter_every = parse_number<int>(value, key);
            } else if (key == "target_count") {
                c.target_count = parse_number<int>(value, key);
            } else if (key == "collapse_budget") {
                c.collapse_budget = parse_number<int>(value, key);
            } else if (key == "sigma") {
                c.sigma = parse_number<double>(value, key);
            } else if (key == "k_max") {
                c.k_max = parse_number<int>(value, key);
            } else if (key == "fibering_samples") {
                c.fibering_samples = parse_number<int>(value, key);
            }
        }
        if (!(s.grad_tol > 0.0)) {
            throw ConfigError("config: grad_tol must be positive");
        }
        if (s.starts < 1) {
            throw ConfigError("config: starts must be at least 1");
        }
        if (!(s.armijo_c1 > 0.0 && s.armijo_c1 < 1.0) || !(s.backtrack > 0.0 && s.backtrack < 1.0)) {
            throw ConfigError("config: armijo_c1 and backtrack must lie in (0, 1)");
        }
    }

    if (const auto output = tree.get_child_optional("output")) {
        check_keys(*output, "output", {"dir", "label"});
        for (const auto& [key, child] : *output) {
            (key == "dir" ? c.output_dir : c.label) = unquote(child.data());
        }
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(fmt::format("config: cannot open '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const RunConfig& c) {
    const auto& p = c.problem;
    const auto& s = c.solve;
    std::string out = fmt::format("command = {}\n\n[problem]\n", c.command);
    if (p.kind == BoundaryKind::dirichlet) {
        out += fmt::format("domain = dirichlet\nlengths = {}\npoints = {}\n", format_list(p.lengths),
                           format_list(p.points));
    } else {
        out += fmt::format("domain = periodic\nperiods = {}\npoints_per_cell = {}\n", format_list(p.periods),
                           p.points_per_cell);
    }
    out += fmt::format("q = {}\nf1 = \"{}\"\nf2 = \"{}\"\nV1 = \"{}\"\nV2 = \"{}\"\nlambda = \"{}\"\ndelta = {}\n", p.q,
                       format_terms(p.f1), format_terms(p.f2), p.V1, p.V2, p.lambda, p.delta);
    if (!p.u0.empty()) {
        out += fmt::format("u0 = \"{}\"\n", p.u0);
    }
    if (!p.v0.empty()) {
        out += fmt::format("v0 = \"{}\"\n", p.v0);
    }
    out += fmt::format(
        "\n[solve]\nmax_iters = {}\ngrad_tol = {}\narmijo_c1 = {}\nbacktrack = {}\ninitial_step = {}\n"
        "max_backtracks = {}\nstarts = {}\nseed = {}\nrecenter_every = {}\ntarget_count = {}\n"
        "collapse_budget = {}\nsigma = {}\nk_max = {}\nfibering_samples = {}\n",
        s.max_iters, s.grad_tol, s.armijo_c1, s.backtrack, s.initial_step, s.max_backtracks, s.starts, s.seed,
        s.recenter_every, c.target_count, c.collapse_budget, c.sigma, c.k_max, c.fibering_samples);
    out += fmt::format("\n[output]\ndir = \"{}\"\nlabel = \"{}\"\n", c.output_dir, c.label);
    return out;
}

}  // namespace nehari
