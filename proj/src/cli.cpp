#include "moebius/cli.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moebius/census.hpp"
#include "moebius/delta.hpp"
#include "moebius/error.hpp"
#include "moebius/identity.hpp"
#include "moebius/kernels.hpp"
#include "moebius/oracle.hpp"
#include "moebius/sieve.hpp"

namespace moebius::cli {

namespace {

constexpr std::uint64_t kIdentityCap = 1'000'000'000'000;
constexpr std::uint64_t kDeltaCap = 1'000'000'000;
constexpr std::uint64_t kTraceCap = 1'000'000;

constexpr std::string_view kCsvHeader = "x,m,n_plus,n_minus,n_zero,q,freq_plus,freq_minus,freq_zero";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Method { identity, delta, sieve, oracle };

const std::map<std::string, Method, std::less<>> kMethods{
    {"identity", Method::identity},
    {"delta", Method::delta},
    {"sieve", Method::sieve},
    {"oracle", Method::oracle},
};

std::string_view method_name(Method m)
{
    for (const auto& [text, value] : kMethods) {
        if (value == m)
            return text;
    }
    return "?";
}

std::uint64_t parse_positive(std::string_view text, std::string_view flag)
{
    std::uint64_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value < 1)
        throw UsageError("invalid value '" + std::string(text) + "' for " + std::string(flag)
                         + ": expected a positive integer");
    return value;
}

std::vector<std::string> split_list(const std::vector<std::string>& raw)
{
    std::vector<std::string> items;
    for (const auto& chunk : raw) {
        std::size_t start = 0;
        while (start <= chunk.size()) {
            const std::size_t comma = chunk.find(',', start);
            const std::size_t stop = comma == std::string::npos ? chunk.size() : comma;
            items.push_back(chunk.substr(start, stop - start));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
    }
    return items;
}

std::uint64_t method_cap(Method m, std::uint64_t memory_budget)
{
    switch (m) {
    case Method::identity:
        return kIdentityCap;
    case Method::delta:
        return kDeltaCap;
    case Method::oracle:
        return oracle::kBruteForceCap;
    case Method::sieve: {
        // largest limit whose table fits the budget
        std::uint64_t lo = 1;
        std::uint64_t hi = (std::uint64_t{1} << 32) - 1;
        if (table_bytes(lo) > memory_budget)
            return 0;
        while (lo < hi) {
            const std::uint64_t mid = lo + (hi - lo + 1) / 2;
            if (table_bytes(mid) <= memory_budget)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }
    }
    return 0;
}

MoebiusTable table_for(Method m, std::uint64_t x_max, std::size_t memory_budget)
{
    const std::uint64_t limit = m == Method::sieve ? x_max : std::max<std::uint64_t>(1, isqrt(x_max));
    return build_table(limit, SieveOptions{memory_budget});
}

Census evaluate(Method m, const MoebiusTable* table, std::uint64_t x)
{
    switch (m) {
    case Method::identity:
        return census(*table, x);
    case Method::delta:
        return census_delta(*table, x);
    case Method::sieve:
        return census_from_table(*table, x);
    case Method::oracle:
        return oracle::census_bruteforce(x);
    }
    throw InternalError("unknown method");
}

void write_csv_row(std::ostream& out, const Census& c)
{
    check_census(c);
    const FrequencyReport f = frequencies(c);
    out << c.floor_x << ',' << c.m << ',' << c.n_plus << ',' << c.n_minus << ',' << c.n_zero << ',' << c.q << ','
        << to_decimal(f.plus) << ',' << to_decimal(f.minus) << ',' << to_decimal(f.zero) << "\r\n";
}

nlohmann::ordered_json json_row(const Census& c)
{
    check_census(c);
    const FrequencyReport f = frequencies(c);
    nlohmann::ordered_json row;
    row["x"] = c.floor_x;
    row["m"] = c.m;
    row["n_plus"] = c.n_plus;
    row["n_minus"] = c.n_minus;
    row["n_zero"] = c.n_zero;
    row["q"] = c.q;
    row["freq_plus"] = to_decimal(f.plus);
    row["freq_minus"] = to_decimal(f.minus);
    row["freq_zero"] = to_decimal(f.zero);
    return row;
}

struct CensusArgs {
    std::vector<std::string> x;
    std::string method = "identity";
    std::string format = "csv";
};

int cmd_census(const CensusArgs& args, std::ostream& out)
{
    const auto method_it = kMethods.find(args.method);
    if (method_it == kMethods.end())
        throw UsageError("unknown method '" + args.method + "' (valid: identity, delta, sieve, oracle)");
    const Method method = method_it->second;
    const std::size_t budget = memory_budget_from_env();
    const std::uint64_t cap = method_cap(method, budget);

    std::vector<std::uint64_t> xs;
    for (const auto& item : split_list(args.x)) {
        const std::uint64_t x = parse_positive(item, "--x");
        if (x > cap)
            throw UsageError("--x value " + item + " exceeds the " + std::string(method_name(method)) + " cap of "
                             + std::to_string(cap));
        xs.push_back(x);
    }
    if (xs.empty())
        throw UsageError("--x needs at least one value");

    std::optional<MoebiusTable> table;
    if (method != Method::oracle)
        table = table_for(method, *std::max_element(xs.begin(), xs.end()), budget);

    std::vector<Census> rows;
    rows.reserve(xs.size());
    for (const std::uint64_t x : xs)
        rows.push_back(evaluate(method, table ? &*table : nullptr, x));

    if (args.format == "json") {
        nlohmann::ordered_json doc;
        doc["method"] = std::string(method_name(method));
        auto& list = doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& c : rows)
            list.push_back(json_row(c));
        out << doc.dump() << '\n';
    } else {
        out << kCsvHeader << "\r\n";
        for (const auto& c : rows)
            write_csv_row(out, c);
    }
    return kSuccess;
}

struct VerifyArgs {
    std::string x_max;
    bool fail_fast = false;
};

int cmd_verify(const VerifyArgs& args, unsigned threads, std::ostream& out)
{
    const std::uint64_t x_max = parse_positive(args.x_max, "--x-max");
    if (x_max > oracle::kBruteForceCap)
        throw UsageError("--x-max " + args.x_max + " exceeds the brute-force cap of "
                         + std::to_string(oracle::kBruteForceCap));
    const MoebiusTable table = build_table(std::max<std::uint64_t>(1, isqrt(x_max)),
                                           SieveOptions{memory_budget_from_env()});
    const auto report = oracle::verify_all(table, x_max, {threads, args.fail_fast, oracle::kBruteForceCap});
    out << oracle::to_json(report) << '\n';
    return report.all_passed ? kSuccess : kCheckFailed;
}

struct TraceArgs {
    std::string x;
    std::string target;
};

int cmd_trace(const TraceArgs& args, std::ostream& out, std::ostream& err)
{
    const auto target = parse_trace_target(args.target);
    if (!target)
        throw UsageError("unknown target '" + args.target + "' (valid: mertens, n_zero, q, n_plus, n_minus)");
    const std::uint64_t x = parse_positive(args.x, "--x");
    if (x > kTraceCap)
        throw UsageError("--x " + args.x + " exceeds the trace cap of " + std::to_string(kTraceCap));

    const MoebiusTable table = build_table(std::max<std::uint64_t>(1, isqrt(x)), SieveOptions{memory_budget_from_env()});
    TraceStream stream(table, x, *target);
    const std::int64_t total = write_trace(out, stream);

    std::int64_t scalar = 0;
    switch (*target) {
    case TraceTarget::mertens:
        scalar = mertens_delta(table, x);
        break;
    case TraceTarget::n_zero:
        scalar = static_cast<std::int64_t>(n_zero_delta(table, x));
        break;
    case TraceTarget::q:
        scalar = static_cast<std::int64_t>(q_delta(table, x));
        break;
    case TraceTarget::n_plus:
        scalar = static_cast<std::int64_t>(census_delta(table, x).n_plus);
        break;
    case TraceTarget::n_minus:
        scalar = static_cast<std::int64_t>(census_delta(table, x).n_minus);
        break;
    }
    if (scalar != total) {
        err << "trace fold " << total << " disagrees with scalar evaluator " << scalar << '\n';
        return kCheckFailed;
    }
    return kSuccess;
}

struct BenchArgs {
    std::string x_max;
    std::vector<std::string> methods{"identity", "delta", "sieve"};
    std::string repetitions = "3";
    std::string format = "csv";
};

double median(std::vector<double> samples)
{
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    return samples.size() % 2 == 1 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2.0;
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err)
{
    const std::uint64_t x_max = parse_positive(args.x_max, "--x-max");
    const std::uint64_t reps = parse_positive(args.repetitions, "--repetitions");
    const std::size_t budget = memory_budget_from_env();

    std::vector<Method> methods;
    for (const auto& item : split_list(args.methods)) {
        const auto it = kMethods.find(item);
        if (it == kMethods.end() || it->second == Method::oracle)
            throw UsageError("unknown bench method '" + item + "' (valid: identity, delta, sieve)");
        if (x_max > method_cap(it->second, budget))
            throw UsageError("--x-max " + args.x_max + " exceeds the " + item + " cap of "
                             + std::to_string(method_cap(it->second, budget)));
        methods.push_back(it->second);
    }
    if (methods.empty())
        throw UsageError("--methods needs at least one name");

    std::vector<BenchRow> rows;
    for (const Method m : methods) {
        std::vector<double> samples;
        Census value;
        for (std::uint64_t r = 0; r < reps; ++r) {
            const auto start = std::chrono::steady_clock::now();
            const MoebiusTable table = table_for(m, x_max, budget);
            value = evaluate(m, &table, x_max);
            const auto stop = std::chrono::steady_clock::now();
            samples.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        }
        rows.push_back({std::string(method_name(m)), value, median(samples)});
    }
    return emit_bench(rows, reps, args.format == "json", out, err);
}

} // namespace

int emit_bench(std::span<const BenchRow> rows, std::uint64_t repetitions, bool json, std::ostream& out,
               std::ostream& err)
{
    bool agree = true;
    for (const auto& r : rows) {
        if (!(r.value == rows.front().value)) {
            agree = false;
            err << "result mismatch: " << rows.front().method << ' ' << to_string(rows.front().value) << " vs "
                << r.method << ' ' << to_string(r.value) << '\n';
        }
    }
    if (!agree)
        return kCheckFailed;

    const std::string_view kernel = kernels::active().name;
    if (json) {
        nlohmann::ordered_json doc;
        doc["repetitions"] = repetitions;
        doc["kernel"] = std::string(kernel);
        auto& list = doc["rows"] = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json row;
            row["method"] = r.method;
            row["x"] = r.value.floor_x;
            row["m"] = r.value.m;
            row["n_plus"] = r.value.n_plus;
            row["n_minus"] = r.value.n_minus;
            row["n_zero"] = r.value.n_zero;
            row["q"] = r.value.q;
            row["median_ms"] = r.median_ms;
            list.push_back(std::move(row));
        }
        out << doc.dump() << '\n';
    } else {
        out << "method,x,m,n_plus,n_minus,n_zero,q,median_ms,repetitions,kernel\r\n";
        for (const auto& r : rows) {
            out << r.method << ',' << r.value.floor_x << ',' << r.value.m << ',' << r.value.n_plus << ','
                << r.value.n_minus << ',' << r.value.n_zero << ',' << r.value.q << ',' << r.median_ms << ','
                << repetitions << ',' << kernel << "\r\n";
        }
    }
    return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact Möbius census, Mertens function and squarefree counts"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    unsigned threads = 1;
    app.add_option("--threads", threads, "Worker threads for verification")->check(CLI::Range(1u, 256u));

    CensusArgs census_args;
    auto* census_cmd = app.add_subcommand("census", "Census of Möbius values at each x");
    census_cmd->add_option("--x", census_args.x, "Comma-separated x values")->required();
    census_cmd->add_option("--method", census_args.method, "identity | delta | sieve | oracle");
    census_cmd->add_option("--format", census_args.format)->check(CLI::IsMember({"csv", "json"}));

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand("verify", "Check every evaluator against brute force for x <= x-max");
    verify_cmd->add_option("--x-max", verify_args.x_max)->required();
    verify_cmd->add_flag("--fail-fast", verify_args.fail_fast);

    TraceArgs trace_args;
    auto* trace_cmd = app.add_subcommand("trace", "Emit every term of a delta form");
    trace_cmd->add_option("--x", trace_args.x)->required();
    trace_cmd->add_option("--target", trace_args.target, "mertens | n_zero | q | n_plus | n_minus")->required();

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Median wall time per method at x-max");
    bench_cmd->add_option("--x-max", bench_args.x_max)->required();
    bench_cmd->add_option("--methods,--method", bench_args.methods, "Comma-separated: identity, delta, sieve");
    bench_cmd->add_option("--repetitions", bench_args.repetitions);
    bench_cmd->add_option("--format", bench_args.format)->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (census_cmd->parsed())
            return cmd_census(census_args, out);
        if (verify_cmd->parsed())
            return cmd_verify(verify_args, threads, out);
        if (trace_cmd->parsed())
            return cmd_trace(trace_args, out, err);
        if (bench_cmd->parsed())
            return cmd_bench(bench_args, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kCheckFailed;
    }
    return kUsage;
}

} // namespace moebius::cli
