// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cutseq/classifier.hpp"
#include "cutseq/expr.hpp"
#include "json.hpp"

#ifdef CUTSEQ_HAVE_BATTERY
#include "battery.hpp"
#endif

namespace cutseq::cli {

namespace {

using nlohmann::json;

struct Flags {
    std::string direction;
    std::size_t length = 1000000;
    std::size_t n_max = 100;
    std::string start;
    std::string out;
    std::string format;
    std::size_t seed_points = 1;
    std::string partner;
    unsigned jobs = 1;
};

// Writes via a temporary file and rename, so readers never see a partial file.
void write_atomically(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write " + tmp.string());
        f << content;
        if (!f) throw InvalidArgument("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

void emit(const Flags& fl, std::ostream& out, const std::string& content) {
    if (fl.out.empty()) {
        out << content;
    } else {
        write_atomically(fl.out, content);
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_or(const Flags& fl, const char* fallback) { return fl.format.empty() ? fallback : fl.format; }

std::optional<Point3> start_of(const Flags& fl, const Direction3& w) {
    if (fl.start.empty()) return std::nullopt;
    return parse_point(fl.start, w.field());
}

void shrink_warning(std::ostream& err, std::size_t requested, std::size_t stable) {
    err << "warning: nmax " << requested << " exceeds the certified range (stable_up_to = " << stable
        << "); reporting n <= " << stable << "\n";
}

int cmd_classify(const Flags& fl, std::ostream& out) {
    const Direction3 w = parse_direction(fl.direction);
    const Classification c = classify(w);
    json j = c.to_json();
    j["law"] = predicted_profile(c, 0).description;
    if (format_or(fl, "json") == "csv") {
        std::ostringstream s;
        s << "key,value\n"
          << "case_tag," << c.case_tag << "\n"
          << "predicted," << law_name(c.predicted) << "\n"
          << "minimal," << (c.minimal() ? "true" : "false") << "\n";
        if (c.c_pred) s << "c_pred," << c.c_pred->to_decimal(30) << "\n";
        if (c.l_frequency) s << "l," << c.l_frequency->to_decimal(30) << "\n";
        emit(fl, out, s.str());
    } else {
        emit(fl, out, dump(j));
    }
    return kOk;
}

int cmd_word(const Flags& fl, std::ostream& out) {
    const Direction3 w = parse_direction(fl.direction);
    const Point3 start = start_of(fl, w).value_or(Point3::default_start(w.field()));
    const SymbolicWord word = cutting_word_3d(w, start, fl.length);
    // Periods are accepted only after three repetitions, so detection reads a
    // longer prefix of the same orbit than the one printed.
    const std::size_t evidence = std::max<std::size_t>(fl.length, 100000);
    const auto per = period_detect(evidence == fl.length ? word : cutting_word_3d(w, start, evidence));
    if (format_or(fl, "json") == "csv") {
        std::string s = "position,letter\n";
        for (std::size_t i = 0; i < word.length(); ++i) s += std::to_string(i + 1) + "," + std::to_string(word.letters[i]) + "\n";
        emit(fl, out, s);
        return kOk;
    }
    json j = {{"schema", 1},
              {"direction", word.direction},
              {"start", word.start},
              {"length", word.length()},
              {"letters", word.str()},
              {"frequencies", json::array()}};
    for (const auto& f : orbit_letter_frequencies(word)) j["frequencies"].push_back(f.get_str());
    j["period"] = per ? json{{"preperiod", per->preperiod}, {"period", per->period}, {"detected_on_length", evidence}}
                      : json(nullptr);
    emit(fl, out, dump(j));
    return kOk;
}

int cmd_profile(const Flags& fl, std::ostream& out, std::ostream& err) {
    const Direction3 w = parse_direction(fl.direction);
    const Classification c = classify(w);
    VerifyOptions o;
    o.length = fl.length;
    o.n_max = fl.n_max;
    o.start = start_of(fl, w);
    o.seed_points = fl.seed_points;
    ComplexityProfile prof = measured_profile(w, c, o);
    if (prof.stable_up_to < fl.n_max) {
        shrink_warning(err, fl.n_max, prof.stable_up_to);
        o.n_max = prof.stable_up_to;
        prof = measured_profile(w, c, o);
    }
    emit(fl, out, format_or(fl, "csv") == "csv" ? prof.to_csv() : dump(prof.to_json()));
    return kOk;
}

int cmd_diagonals(const Flags& fl, std::ostream& out) {
    const Direction3 w = parse_direction(fl.direction);
    const auto counts = count_diagonals_up_to(w, fl.n_max);
    if (format_or(fl, "csv") == "csv") {
        std::string s = "n,proper,triple\n";
        for (std::size_t n = 1; n < counts.size(); ++n)
            s += std::to_string(n) + "," + std::to_string(counts[n].proper) + "," + std::to_string(counts[n].triple) + "\n";
        emit(fl, out, s);
        return kOk;
    }
    json rows = json::array();
    for (std::size_t n = 1; n < counts.size(); ++n) rows.push_back(counts[n].to_json());
    emit(fl, out, dump({{"schema", 1}, {"direction", format_direction(w)}, {"n_max", fl.n_max}, {"counts", rows}}));
    return kOk;
}

int cmd_verify(const Flags& fl, std::ostream& out, std::ostream& err) {
    const Direction3 w = parse_direction(fl.direction);
    VerifyOptions o;
    o.length = fl.length;
    o.n_max = fl.n_max;
    o.start = start_of(fl, w);
    o.seed_points = fl.seed_points;
    if (!fl.partner.empty()) o.partner = parse_direction(fl.partner);
    const VerificationReport r = verify(w, o);
    if (r.profile.stable_up_to < fl.n_max) shrink_warning(err, fl.n_max, r.profile.stable_up_to);
    if (format_or(fl, "json") == "csv") {
        std::string s = "check,passed\n";
        for (const auto& c : r.checks) s += c.name + "," + (c.passed ? "true" : "false") + "\n";
        emit(fl, out, s);
    } else {
        emit(fl, out, dump(r.to_json()));
    }
    return r.passed() ? kOk : kVerificationFailed;
}

int cmd_suite(const Flags& fl, std::ostream& out) {
#ifdef CUTSEQ_HAVE_BATTERY
    acceptance::BatteryOptions o;
    o.jobs = fl.jobs;
    const auto results = acceptance::run_battery(o, [&](const acceptance::CriterionResult& r) {
        if (!fl.out.empty()) {
            write_atomically((std::filesystem::path(fl.out) / ("criterion-" + std::to_string(r.id) + ".json")).string(),
                             dump(r.to_json()));
        }
    });
    for (const auto& r : results) {
        out << r.line() << "\n";
        if (!r.note.empty()) out << "    note: " << r.note << "\n";
    }
    return acceptance::exit_status(results) == 0 ? kOk : kVerificationFailed;
#else
    (void)fl;
    (void)out;
    throw InvalidArgument("this build does not include the acceptance battery (configure with CUTSEQ_BUILD_TESTS=ON)");
#endif
}

json error_json(const std::string& code, const std::string& message) {
    return {{"schema", 1}, {"error", {{"code", code}, {"message", message}}}};
}

bool is_input_error(const std::string& code) {
    return code == "ParseError" || code == "InvalidField" || code == "NonPositiveCoordinate" ||
           code == "FieldMismatch" || code == "DivisionByZero" || code == "InvalidArgument";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cutting sequences of cube billiard directions: classification, words and complexity"};
    app.require_subcommand(1);
    Flags fl;
    const std::vector<std::string> formats{"csv", "json"};

    auto add_direction = [&](CLI::App* sub) {
        sub->add_option("direction", fl.direction, "Direction, e.g. \"(1, sqrt2, sqrt3)\"")->required();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", fl.format, "Output format")->check(CLI::IsMember(formats));
        sub->add_option("--out", fl.out, "Write the output to this file instead of stdout");
    };
    auto add_word = [&](CLI::App* sub) {
        sub->add_option("--length", fl.length, "Word prefix length")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--start", fl.start, "Start point \"(x, y, z)\" in the direction's field");
    };
    auto add_nmax = [&](CLI::App* sub) {
        sub->add_option("--nmax", fl.n_max, "Largest factor length")->capture_default_str()->check(CLI::PositiveNumber);
    };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed-points", fl.seed_points, "Start points sampled for non-minimal directions")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "Decide the complexity case of a direction");
    add_direction(classify_cmd);
    add_format(classify_cmd);

    CLI::App* word_cmd = app.add_subcommand("word", "Print a cutting word and its detected period");
    add_direction(word_cmd);
    add_word(word_cmd);
    add_format(word_cmd);

    CLI::App* profile_cmd = app.add_subcommand("profile", "Complexity profile p, s, d2 of a cutting word");
    add_direction(profile_cmd);
    add_word(profile_cmd);
    add_nmax(profile_cmd);
    add_seed(profile_cmd);
    add_format(profile_cmd);

    CLI::App* diagonals_cmd = app.add_subcommand("diagonals", "Count generalized diagonals by combinatorial length");
    add_direction(diagonals_cmd);
    add_nmax(diagonals_cmd);
    add_format(diagonals_cmd);

    CLI::App* verify_cmd = app.add_subcommand("verify", "Check the predicted complexity law against a measured profile");
    add_direction(verify_cmd);
    add_word(verify_cmd);
    add_nmax(verify_cmd);
    add_seed(verify_cmd);
    add_format(verify_cmd);
    verify_cmd->add_option("--partner", fl.partner, "Second direction expected to share the complexity");

    CLI::App* suite_cmd = app.add_subcommand("suite", "Run the acceptance battery");
    suite_cmd->add_option("--out", fl.out, "Directory for per-criterion JSON reports");
    suite_cmd->add_option("--jobs", fl.jobs, "Criteria run in parallel")->capture_default_str()->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << error_json("UsageError", e.what()).dump() << "\n";
        return kParseError;
    }

    try {
        if (*classify_cmd) return cmd_classify(fl, out);
        if (*word_cmd) return cmd_word(fl, out);
        if (*profile_cmd) return cmd_profile(fl, out, err);
        if (*diagonals_cmd) return cmd_diagonals(fl, out);
        if (*verify_cmd) return cmd_verify(fl, out, err);
        if (*suite_cmd) return cmd_suite(fl, out);
    } catch (const cutseq::ParseError& e) {
        json j = error_json(e.code(), e.what());
        j["error"]["position"] = e.position();
        j["error"]["expected"] = e.expected();
        err << j.dump() << "\n";
        return kParseError;
    } catch (const SingularOrbit& e) {
        json j = error_json(e.code(), e.what());
        j["error"]["time"] = e.time().to_expression();
        j["error"]["families"] = {e.family_a(), e.family_b()};
        err << j.dump() << "\n";
        return kSingularOrbit;
    } catch (const Error& e) {
        err << error_json(e.code(), e.what()).dump() << "\n";
        return is_input_error(e.code()) ? kParseError : kOtherError;
    } catch (const std::exception& e) {
        err << error_json("InternalError", e.what()).dump() << "\n";
        return kOtherError;
    }
    return kOtherError;
}

}  // namespace cutseq::cli
