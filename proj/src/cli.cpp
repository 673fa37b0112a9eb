#include "morl/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "morl/deploy.hpp"
#include "morl/envs.hpp"
#include "morl/exact.hpp"
#include "morl/io.hpp"
#include "morl/qlearning.hpp"
#include "morl/reward_model.hpp"

namespace morl::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

class UsageError : public Error {
public:
    using Error::Error;
};

struct GlobalOptions {
    std::string env;
    std::string utility = "min";
    std::string criterion = "esr";
    std::uint64_t seed = 1;
    std::string out;
    std::optional<std::size_t> episodes;
    int horizon_cap = 0;
    std::size_t enum_cap = kDefaultPolicyCap;

    json to_json() const {
        return {{"env", env},
                {"utility", utility},
                {"criterion", criterion},
                {"seed", seed},
                {"out", out},
                {"episodes", episodes ? json(*episodes) : json(nullptr)},
                {"horizon_cap", horizon_cap},
                {"enum_cap", enum_cap}};
    }
};

struct Context {
    GlobalOptions global;
    std::vector<std::string> args;
    std::ostream& out;
    std::ostream& err;

    ExactOptions exact_options() const {
        ExactOptions o;
        o.policy_cap = global.enum_cap;
        o.branch_cap = std::max<std::size_t>(global.enum_cap, kDefaultBranchCap);
        o.state_cap = o.branch_cap;
        return o;
    }
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::string vec(const RewardVector& v) { return fmt::format("({})", fmt::join(v, ",")); }

std::string opt_num(const std::optional<double>& x) { return x ? fmt::format("{}", *x) : std::string("n/a"); }

json report_header(const Context& ctx, const std::string& command, json config) {
    config["global"] = ctx.global.to_json();
    return {{"tool", "morl"}, {"version", MORL_VERSION}, {"command", command}, {"argv", ctx.args},
            {"config", config}};
}

void write_output(const Context& ctx, const std::string& name, const std::string& text) {
    if (ctx.global.out.empty()) return;
    io::write_text_file(fs::path(ctx.global.out) / name, text);
}

Momdp load_env(const Context& ctx) {
    if (ctx.global.env.empty()) throw UsageError("--env is required (builtin:fig1, builtin:fig2 or a file path)");
    Momdp m = io::resolve_env(ctx.global.env);
    if (ctx.global.horizon_cap > 0 && m.horizon > ctx.global.horizon_cap)
        throw CapExceeded(fmt::format("model horizon {} exceeds --horizon-cap {}", m.horizon, ctx.global.horizon_cap));
    return m;
}

UtilityFunction load_utility(const Context& ctx, const Momdp& m) {
    UtilityFunction u = parse_utility(ctx.global.utility);
    if (u.dimension() != 0 && u.dimension() != m.d)
        throw InvalidInput(fmt::format("utility '{}' has {} weights but the model has {} objectives", u.spec(),
                                       u.dimension(), m.d));
    return u;
}

RewardModel fit_model(const Context& ctx, const Momdp& m, std::size_t samples) {
    if (samples == 0) throw UsageError("a reward model is needed: pass --model-samples N (N > 0) or --model FILE");
    return fit_reward_model(m, nullptr, samples, ctx.global.seed);
}

// ---------------------------------------------------------------------------
// Policy sources: solve:<kind>, train:<mode>, or a policy file.

struct PolicySpec {
    std::string label;
    std::string source;
};

PolicySpec parse_policy_spec(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) return {text, text};
    return {text.substr(0, eq), text.substr(eq + 1)};
}

bool source_needs_model(const std::string& source) {
    return source == "solve:proxy-augmented" || source == "train:full-proxy" || source == "train:asymmetric-proxy";
}

struct PolicyBuild {
    const Momdp& momdp;
    const UtilityFunction& u;
    Criterion criterion;
    const RewardModel* model;
    ExactOptions exact;
    TrainConfig train;
};

Solution solve_kind(const PolicyBuild& b, ObservationKind kind, const std::string& solver) {
    const bool backward = kind == ObservationKind::TrueAugmented && b.criterion == Criterion::Esr &&
                          (solver == "auto" || solver == "backward");
    if (solver == "backward" && !backward)
        throw UsageError("the backward solver only handles true-augmented observations under ESR");
    if (backward) return solve_esr_backward(b.momdp, b.u, b.exact);
    return solve_by_enumeration(b.momdp, b.u, kind, b.criterion, b.model, b.exact);
}

Policy resolve_policy(const PolicyBuild& b, const std::string& source) {
    if (source.rfind("solve:", 0) == 0)
        return solve_kind(b, parse_observation_kind(source.substr(6)), "auto").policy;
    if (source.rfind("train:", 0) == 0) {
        TrainConfig cfg = b.train;
        cfg.mode = parse_training_mode(source.substr(6));
        return train_q(b.momdp, b.u, cfg, b.model).policy;
    }
    const std::string path = source.rfind("file:", 0) == 0 ? source.substr(5) : source;
    return io::policy_from_json(io::read_json_file(path), b.momdp);
}

// ---------------------------------------------------------------------------

int cmd_validate(Context& ctx, const std::string& export_path) {
    if (ctx.global.env.empty()) throw UsageError("--env is required");
    const Momdp m = io::resolve_env(ctx.global.env, false);
    const auto violations = validate(m);
    if (violations.empty())
        ctx.out << fmt::format("{}: valid ({} states, d={}, horizon {})\n", ctx.global.env, m.num_states(), m.d,
                               m.horizon);
    for (const auto& v : violations) ctx.out << fmt::format("violation: {}: {}\n", v.where, v.message);
    if (!export_path.empty()) io::write_text_file(export_path, io::to_json(m).dump(2) + "\n");
    return violations.empty() ? kOk : kUsage;
}

int cmd_solve(Context& ctx, const std::string& obs, std::size_t model_samples, const std::string& solver) {
    const Momdp m = load_env(ctx);
    const UtilityFunction u = load_utility(ctx, m);
    const Criterion criterion = parse_criterion(ctx.global.criterion);
    if (solver != "auto" && solver != "backward" && solver != "enumeration")
        throw UsageError(fmt::format("unknown solver '{}' (expected auto, backward or enumeration)", solver));

    std::vector<ObservationKind> kinds;
    for (const auto& k : split_list(obs)) kinds.push_back(parse_observation_kind(k));
    if (kinds.empty()) throw UsageError("--obs needs at least one observation kind");

    std::optional<RewardModel> model;
    if (std::find(kinds.begin(), kinds.end(), ObservationKind::ProxyAugmented) != kinds.end())
        model = fit_model(ctx, m, model_samples);

    PolicyBuild build{m, u, criterion, model ? &*model : nullptr, ctx.exact_options(), {}};
    json results = json::array();
    std::string csv = "observation_kind,criterion,value,expected_return,candidates\n";
    for (ObservationKind kind : kinds) {
        const Solution sol = solve_kind(build, kind, solver);
        ctx.out << fmt::format("{} {}: value {} expected return {} ({} candidates)\n", to_string(kind),
                               to_string(criterion), sol.value.value, vec(sol.value.expected_return), sol.candidates);
        results.push_back({{"observation_kind", to_string(kind)},
                           {"criterion", to_string(criterion)},
                           {"value", sol.value.value},
                           {"expected_return", sol.value.expected_return},
                           {"trajectory_count", sol.value.trajectory_count},
                           {"candidates", sol.candidates},
                           {"policy", io::to_json(sol.policy, m)}});
        csv += fmt::format("{},{},{},\"{}\",{}\n", to_string(kind), to_string(criterion), sol.value.value,
                           fmt::join(sol.value.expected_return, ","), sol.candidates);
        write_output(ctx, fmt::format("policy_{}.json", to_string(kind)), io::to_json(sol.policy, m).dump(2) + "\n");
    }

    json report = report_header(ctx, "solve", {{"obs", obs}, {"model_samples", model_samples}, {"solver", solver}});
    report["momdp_hash"] = io::hex(io::fingerprint(m));
    report["results"] = results;
    if (model) {
        report["reward_model"] = io::to_json(*model, m);
        write_output(ctx, "model.json", io::to_json(*model, m).dump(2) + "\n");
    }
    write_output(ctx, "solve_report.json", report.dump(2) + "\n");
    write_output(ctx, "solve_values.csv", csv);
    return kOk;
}

int cmd_train(Context& ctx, TrainConfig cfg, const std::string& mode, std::size_t model_samples) {
    const Momdp m = load_env(ctx);
    const UtilityFunction u = load_utility(ctx, m);
    cfg.mode = parse_training_mode(mode);
    cfg.seed = ctx.global.seed;
    cfg.episodes = ctx.global.episodes.value_or(50'000);

    std::optional<RewardModel> model;
    if (cfg.mode != TrainingMode::TrueRewards) {
        if (model_samples == 0)
            throw UsageError(fmt::format("mode {} needs a reward model: pass --model-samples N", mode));
        model = fit_model(ctx, m, model_samples);
    }
    const TrainResult result = train_q(m, u, cfg, model ? &*model : nullptr);
    const Regime regime = native_regime(observation_kind(cfg.mode));
    const double final_value = result.curve.back().greedy_value;

    ctx.out << fmt::format("trained {} episodes in mode {}; greedy policy exact ESR under {} regime: {}\n",
                           cfg.episodes, mode, to_string(regime), final_value);
    for (const auto& [key, a] : result.policy.table()) {
        const auto& st = m.states[key.state];
        ctx.out << fmt::format("  {} step {} acc {} -> {}\n", st.name, key.step,
                               vec(dequantize(key.acc, result.policy.grid())), st.actions[a].name);
    }

    std::string curve = "episode,greedy_value,epsilon\n";
    for (const auto& p : result.curve) curve += fmt::format("{},{},{}\n", p.episode, p.greedy_value, p.epsilon);

    json report = report_header(ctx, "train",
                                {{"mode", mode},
                                 {"episodes", cfg.episodes},
                                 {"alpha", cfg.alpha},
                                 {"epsilon_start", cfg.epsilon_start},
                                 {"epsilon_end", cfg.epsilon_end},
                                 {"epsilon_decay_episodes", cfg.epsilon_decay_episodes},
                                 {"curve_every", cfg.curve_every},
                                 {"model_samples", model_samples}});
    report["momdp_hash"] = io::hex(io::fingerprint(m));
    report["final_greedy_value"] = final_value;
    report["evaluation_regime"] = to_string(regime);
    report["policy_hash"] = io::hex(io::fingerprint(result.policy, m));

    write_output(ctx, "qtable.json", io::to_json(result.table, m).dump(2) + "\n");
    write_output(ctx, "policy.json", io::to_json(result.policy, m).dump(2) + "\n");
    write_output(ctx, "curve.csv", curve);
    if (model) write_output(ctx, "model.json", io::to_json(*model, m).dump(2) + "\n");
    write_output(ctx, "train_report.json", report.dump(2) + "\n");
    return kOk;
}

json report_json(const DeploymentReport& r) {
    json hist = json::array();
    for (const auto& [value, count] : r.histogram) hist.push_back({{"utility", value}, {"count", count}});
    return {{"policy", r.label},
            {"regime", to_string(r.regime)},
            {"episodes", r.episodes},
            {"seed", r.seed},
            {"mean", r.mean},
            {"std_error", r.std_error},
            {"exact", r.exact ? json(*r.exact) : json(nullptr)},
            {"flagged", r.flagged},
            {"histogram", hist},
            {"policy_hash", io::hex(r.policy_hash)},
            {"momdp_hash", io::hex(r.momdp_hash)},
            {"utility", r.utility}};
}

struct DeployArgs {
    std::string policy;
    std::string regime = "true";
    std::string model_file;
    std::size_t model_samples = 10'000;
    unsigned threads = 1;
    bool strict_none = false;
};

int cmd_deploy(Context& ctx, const DeployArgs& args) {
    const Momdp m = load_env(ctx);
    const UtilityFunction u = load_utility(ctx, m);
    const Regime regime = parse_regime(args.regime);
    if (args.policy.empty()) throw UsageError("--policy is required");
    const PolicySpec spec = parse_policy_spec(args.policy);

    std::optional<RewardModel> model;
    if (!args.model_file.empty())
        model = io::reward_model_from_json(io::read_json_file(args.model_file), m);
    else if (regime == Regime::Proxy || source_needs_model(spec.source))
        model = fit_model(ctx, m, args.model_samples);

    TrainConfig train;
    train.seed = ctx.global.seed;
    PolicyBuild build{m, u, parse_criterion(ctx.global.criterion), model ? &*model : nullptr, ctx.exact_options(),
                      train};
    const Policy policy = resolve_policy(build, spec.source);

    DeployOptions opts;
    opts.episodes = ctx.global.episodes.value_or(10'000);
    opts.seed = ctx.global.seed;
    opts.threads = args.threads;
    opts.strict_none = args.strict_none;
    const DeploymentReport r = deploy(m, policy, u, regime, model ? &*model : nullptr, opts, spec.label);

    ctx.out << fmt::format("{}/{}: mean {} ± {} over {} episodes; exact {}{}\n", r.label, to_string(r.regime), r.mean,
                           r.std_error, r.episodes, opt_num(r.exact),
                           r.flagged ? " [FLAG: Monte-Carlo mean more than 3 standard errors from exact]" : "");

    json report = report_header(ctx, "deploy",
                                {{"policy", args.policy},
                                 {"regime", args.regime},
                                 {"model_file", args.model_file},
                                 {"model_samples", args.model_samples},
                                 {"threads", args.threads},
                                 {"strict_none", args.strict_none}});
    report["report"] = report_json(r);
    std::string csv = "policy,regime,episodes,mean,std_error,exact,flagged\n";
    csv += fmt::format("{},{},{},{},{},{},{}\n", r.label, to_string(r.regime), r.episodes, r.mean, r.std_error,
                       opt_num(r.exact), r.flagged);
    write_output(ctx, "deploy_report.json", report.dump(2) + "\n");
    write_output(ctx, "deploy_report.csv", csv);
    return kOk;
}

struct Expectation {
    std::string lhs, op, rhs;
};

Expectation parse_expectation(const std::string& text) {
    static const std::regex re(R"(^\s*(\S+)\s*(>=|<=|==|>|<)\s*(\S+)\s*$)");
    std::smatch mm;
    if (!std::regex_match(text, mm, re))
        throw UsageError(fmt::format("cannot parse expectation '{}' (expected e.g. \"a/proxy > b/proxy\")", text));
    return {mm[1], mm[2], mm[3]};
}

struct CompareArgs {
    std::vector<std::string> policies;
    std::string regimes = "true,proxy";
    std::vector<std::string> expectations;
    std::size_t model_samples = 10'000;
    std::size_t train_episodes = 50'000;
    unsigned threads = 1;
};

int cmd_compare(Context& ctx, const CompareArgs& args) {
    const auto regime_names = split_list(args.regimes);
    if (regime_names.empty())
        throw UsageError("--regimes must list at least one of true, proxy, none (e.g. --regimes true,proxy)");
    std::vector<Regime> regimes;
    for (const auto& r : regime_names) regimes.push_back(parse_regime(r));
    std::vector<Expectation> expectations;
    for (const auto& e : args.expectations) expectations.push_back(parse_expectation(e));

    const Momdp m = load_env(ctx);
    const UtilityFunction u = load_utility(ctx, m);
    const Criterion criterion = parse_criterion(ctx.global.criterion);

    std::vector<PolicySpec> specs;
    for (const auto& p : args.policies) specs.push_back(parse_policy_spec(p));
    if (specs.empty())
        specs = {{"true-trained", "solve:true-augmented"},
                 {"markov", "solve:markov"},
                 {"proxy-trained", "solve:proxy-augmented"}};

    bool need_model = std::find(regimes.begin(), regimes.end(), Regime::Proxy) != regimes.end();
    for (const auto& s : specs) need_model = need_model || source_needs_model(s.source);
    std::optional<RewardModel> model;
    if (need_model) model = fit_model(ctx, m, args.model_samples);

    TrainConfig train;
    train.seed = ctx.global.seed;
    train.episodes = args.train_episodes;
    PolicyBuild build{m, u, criterion, model ? &*model : nullptr, ctx.exact_options(), train};

    DeployOptions opts;
    opts.episodes = ctx.global.episodes.value_or(10'000);
    opts.seed = ctx.global.seed;
    opts.threads = args.threads;

    std::vector<DeploymentReport> reports;
    for (const auto& spec : specs) {
        const Policy policy = resolve_policy(build, spec.source);
        for (Regime regime : regimes)
            reports.push_back(deploy(m, policy, u, regime, model ? &*model : nullptr, opts, spec.label));
    }
    if (reports.size() == 1) reports.push_back(reports.front());
    const auto rows = gap_report(m, u, reports);

    std::string csv = "policy,regime,exact,monte_carlo,gap\n";
    ctx.out << fmt::format("{:<24} {:<8} {:>12} {:>12} {:>10}\n", "policy", "regime", "exact", "monte_carlo", "gap");
    for (const auto& row : rows) {
        ctx.out << fmt::format("{:<24} {:<8} {:>12} {:>12.6f} {:>10}\n", row.label, to_string(row.regime),
                               opt_num(row.exact), row.monte_carlo, row.gap);
        csv += fmt::format("{},{},{},{},{}\n", row.label, to_string(row.regime), opt_num(row.exact), row.monte_carlo,
                           row.gap);
    }

    auto lookup = [&](const std::string& name) -> std::optional<double> {
        const auto slash = name.rfind('/');
        if (slash == std::string::npos) return std::nullopt;
        std::string label = name.substr(0, slash);
        const std::string regime = name.substr(slash + 1);
        auto find = [&](const std::string& l) -> std::optional<double> {
            for (const auto& r : reports)
                if (r.label == l && to_string(r.regime) == regime) return r.exact.value_or(r.mean);
            return std::nullopt;
        };
        if (auto v = find(label)) return v;
        if (label == "augmented") return find("true-trained");
        if (label == "true-trained") return find("augmented");
        return std::nullopt;
    };

    std::vector<std::string> violated;
    json checks = json::array();
    for (const auto& e : expectations) {
        const auto a = lookup(e.lhs);
        const auto b = lookup(e.rhs);
        if (!a || !b)
            throw UsageError(fmt::format("expectation refers to unknown row '{}' (rows are <policy>/<regime>)",
                                         !a ? e.lhs : e.rhs));
        constexpr double tol = kTieTolerance;
        bool ok = false;
        if (e.op == ">") ok = *a > *b + tol;
        if (e.op == ">=") ok = *a >= *b - tol;
        if (e.op == "<") ok = *a < *b - tol;
        if (e.op == "<=") ok = *a <= *b + tol;
        if (e.op == "==") ok = std::abs(*a - *b) <= tol;
        const std::string text = fmt::format("{} {} {} ({} vs {})", e.lhs, e.op, e.rhs, *a, *b);
        checks.push_back({{"expectation", text}, {"holds", ok}});
        if (!ok) violated.push_back(text);
    }

    json report = report_header(ctx, "compare",
                                {{"policies", args.policies},
                                 {"regimes", args.regimes},
                                 {"expect", args.expectations},
                                 {"model_samples", args.model_samples},
                                 {"train_episodes", args.train_episodes},
                                 {"threads", args.threads}});
    json jr = json::array();
    for (const auto& r : reports) jr.push_back(report_json(r));
    report["reports"] = jr;
    report["expectations"] = checks;
    write_output(ctx, "gap_table.csv", csv);
    write_output(ctx, "compare_report.json", report.dump(2) + "\n");

    for (const auto& v : violated) ctx.err << "expectation violated: " << v << "\n";
    return violated.empty() ? kOk : kExpectation;
}

struct GenerateArgs {
    envs::GeneratorConfig config;
    std::string states = "1-3";
    std::string actions = "1-3";
    std::string outcomes = "1-2";
    std::string rewards = "0-4";
};

std::pair<long, long> parse_range(const std::string& text, const char* what) {
    static const std::regex re(R"(^\s*(-?\d+)\s*(?:-\s*(-?\d+))?\s*$)");
    std::smatch mm;
    if (!std::regex_match(text, mm, re)) throw UsageError(fmt::format("bad {} range '{}' (expected N or N-M)", what, text));
    const long lo = std::stol(mm[1]);
    const long hi = mm[2].matched ? std::stol(mm[2]) : lo;
    if (lo > hi) throw UsageError(fmt::format("empty {} range '{}'", what, text));
    return {lo, hi};
}

int cmd_generate(Context& ctx, GenerateArgs args) {
    auto& c = args.config;
    auto size_range = [](const std::string& text, const char* what) {
        auto [lo, hi] = parse_range(text, what);
        if (lo < 1) throw UsageError(fmt::format("{} range must be positive", what));
        return std::pair<std::size_t, std::size_t>(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
    };
    std::tie(c.min_states, c.max_states) = size_range(args.states, "state");
    std::tie(c.min_actions, c.max_actions) = size_range(args.actions, "action");
    std::tie(c.min_outcomes, c.max_outcomes) = size_range(args.outcomes, "outcome");
    auto [rlo, rhi] = parse_range(args.rewards, "reward");
    c.min_reward = static_cast<int>(rlo);
    c.max_reward = static_cast<int>(rhi);
    c.seed = ctx.global.seed;

    const Momdp m = envs::generate(c);
    const std::string text = io::to_json(m).dump(2) + "\n";
    if (ctx.global.out.empty())
        ctx.out << text;
    else {
        write_output(ctx, "momdp.json", text);
        ctx.out << fmt::format("wrote {}\n", (fs::path(ctx.global.out) / "momdp.json").string());
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Augmented-state multi-objective RL experiments on finite MOMDPs", "morl"};
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx{{}, args, out, err};
    GlobalOptions& g = ctx.global;
    std::size_t episodes = 0;
    auto* episodes_opt = app.add_option("--episodes", episodes, "Episode count (train: 50000, deploy/compare: 10000)");
    app.add_option("--env", g.env, "builtin:fig1, builtin:fig2 or a MOMDP file");
    app.add_option("--utility", g.utility, "min | linear:w1,w2,...")->capture_default_str();
    app.add_option("--criterion", g.criterion, "esr | ser")->capture_default_str();
    app.add_option("--seed", g.seed, "Root seed")->capture_default_str();
    app.add_option("--out", g.out, "Output directory for report files");
    app.add_option("--horizon-cap", g.horizon_cap, "Reject models with a longer horizon (0 = no cap)");
    app.add_option("--enum-cap", g.enum_cap, "Cap on enumerated candidate policies")->capture_default_str();

    auto* validate_cmd = app.add_subcommand("validate", "Check a MOMDP and list violations");
    std::string export_path;
    validate_cmd->add_option("--export", export_path, "Write the model in the MOMDP file format");

    auto* solve_cmd = app.add_subcommand("solve", "Exact optimal values per observation kind");
    std::string obs = "true-augmented,markov";
    std::size_t solve_samples = 10'000;
    std::string solver = "auto";
    solve_cmd->add_option("--obs", obs, "Comma-separated observation kinds")->capture_default_str();
    solve_cmd->add_option("--model-samples", solve_samples, "Transitions used to fit the reward model")
        ->capture_default_str();
    solve_cmd->add_option("--solver", solver, "auto | backward | enumeration")->capture_default_str();

    auto* train_cmd = app.add_subcommand("train", "Tabular augmented-state Q-learning");
    TrainConfig train_cfg;
    std::string mode = "true-rewards";
    std::size_t train_samples = 0;
    train_cmd->add_option("--mode", mode, "true-rewards | full-proxy | asymmetric-proxy")->capture_default_str();
    train_cmd->add_option("--alpha", train_cfg.alpha, "Learning rate")->capture_default_str();
    train_cmd->add_option("--eps-start", train_cfg.epsilon_start)->capture_default_str();
    train_cmd->add_option("--eps-end", train_cfg.epsilon_end)->capture_default_str();
    train_cmd->add_option("--eps-decay", train_cfg.epsilon_decay_episodes, "Decay length (0 = all episodes)")
        ->capture_default_str();
    train_cmd->add_option("--curve-every", train_cfg.curve_every)->capture_default_str();
    train_cmd->add_option("--model-samples", train_samples, "Transitions used to fit the reward model");

    auto* deploy_cmd = app.add_subcommand("deploy", "Run a frozen policy under an observation regime");
    DeployArgs deploy_args;
    deploy_cmd->add_option("--policy", deploy_args.policy, "[label=]solve:<kind> | train:<mode> | policy file");
    deploy_cmd->add_option("--regime", deploy_args.regime, "true | proxy | none")->capture_default_str();
    deploy_cmd->add_option("--model", deploy_args.model_file, "Reward model file");
    deploy_cmd->add_option("--model-samples", deploy_args.model_samples)->capture_default_str();
    deploy_cmd->add_option("--threads", deploy_args.threads)->capture_default_str();
    deploy_cmd->add_flag("--strict-none", deploy_args.strict_none, "Fail instead of freezing the accumulator");

    auto* compare_cmd = app.add_subcommand("compare", "Deploy several policies across regimes and rank them");
    CompareArgs compare_args;
    compare_cmd->add_option("--policy", compare_args.policies, "label=source, repeatable");
    compare_cmd->add_option("--regimes", compare_args.regimes)->capture_default_str();
    compare_cmd->add_option("--expect", compare_args.expectations, "e.g. \"a/proxy > b/proxy\", repeatable");
    compare_cmd->add_option("--model-samples", compare_args.model_samples)->capture_default_str();
    compare_cmd->add_option("--train-episodes", compare_args.train_episodes)->capture_default_str();
    compare_cmd->add_option("--threads", compare_args.threads)->capture_default_str();

    auto* generate_cmd = app.add_subcommand("generate", "Random layered-DAG MOMDP");
    GenerateArgs gen;
    generate_cmd->add_option("--states", gen.states, "Non-terminal state count, N or N-M")->capture_default_str();
    generate_cmd->add_option("--actions", gen.actions)->capture_default_str();
    generate_cmd->add_option("--outcomes", gen.outcomes)->capture_default_str();
    generate_cmd->add_option("--rewards", gen.rewards, "Integer reward component range")->capture_default_str();
    generate_cmd->add_option("--objectives", gen.config.d)->capture_default_str();
    generate_cmd->add_option("--horizon", gen.config.horizon)->capture_default_str();
    generate_cmd->add_option("--gamma", gen.config.gamma)->capture_default_str();
    generate_cmd->add_flag("--deterministic", gen.config.deterministic);
    generate_cmd->add_flag("--terminal-only", gen.config.terminal_only_rewards);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (*episodes_opt) g.episodes = episodes;

    try {
        if (validate_cmd->parsed()) return cmd_validate(ctx, export_path);
        if (solve_cmd->parsed()) return cmd_solve(ctx, obs, solve_samples, solver);
        if (train_cmd->parsed()) return cmd_train(ctx, train_cfg, mode, train_samples);
        if (deploy_cmd->parsed()) return cmd_deploy(ctx, deploy_args);
        if (compare_cmd->parsed()) return cmd_compare(ctx, compare_args);
        if (generate_cmd->parsed()) return cmd_generate(ctx, gen);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << app.help();
    return kUsage;
}

}  // namespace morl::cli
