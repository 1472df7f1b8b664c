#include <cha/report.hpp>

#include <json.hpp>

#include <cstdio>

namespace cha {

namespace {

std::string head_text(const PredicateKey& predicate) {
    std::string out = predicate.name;
    if (predicate.arity == 0) {
        return out;
    }
    out += '(';
    for (Dim d = 0; d < predicate.arity; ++d) {
        out += (d == 0 ? "" : ",") + dimension_name(d);
    }
    return out + ")";
}

std::vector<std::string> constraint_texts(const Polyhedron& p) {
    std::vector<std::string> out;
    for (const Constraint& c : p.constraints()) {
        out.push_back(format_constraint(c));
    }
    return out;
}

std::string seconds_text(double seconds) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", seconds);
    return buf;
}

std::vector<std::string> names(const std::vector<PredicateKey>& keys) {
    std::vector<std::string> out;
    for (const PredicateKey& k : keys) {
        out.push_back(to_string(k));
    }
    return out;
}

}  // namespace

std::string format_constrained_atom(const PredicateKey& predicate, const Polyhedron& polyhedron) {
    std::string out = head_text(predicate) + " :- ";
    std::vector<std::string> cs = constraint_texts(polyhedron);
    if (cs.empty()) {
        return out + "true.";
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
        out += (i == 0 ? "" : ", ") + cs[i];
    }
    return out + ".";
}

std::size_t total_constraint_count(const Interpretation& interpretation) {
    std::size_t total = 0;
    for (const auto& [p, poly] : interpretation) {
        total += poly.constraint_count();
    }
    return total;
}

std::string render_text(const Program& program, const AnalysisResult& result, const ReportOptions& options) {
    std::string out;
    if (options.trace) {
        for (const TraceEvent& e : result.trace) {
            out += to_string(e) + "\n";
        }
    }
    for (const PredicateKey& p : program.predicates()) {
        if (auto it = result.interpretation.find(p); it != result.interpretation.end()) {
            out += format_constrained_atom(p, it->second) + "\n";
        }
    }
    if (options.counts) {
        out += "% constraints: " + std::to_string(total_constraint_count(result.interpretation)) + "\n";
        for (const SccStats& s : result.sccs) {
            out += "% scc";
            for (const std::string& n : names(s.predicates)) {
                out += " " + n;
            }
            out += ": iterations=" + std::to_string(s.iterations);
            if (!s.widening_points.empty()) {
                out += " widening=";
                bool first = true;
                for (const PredicateKey& w : s.widening_points) {
                    out += (first ? "" : ",") + to_string(w);
                    first = false;
                }
            }
            out += "\n";
        }
        out += "% narrowing passes: " + std::to_string(result.narrowing_passes) + "\n";
    }
    if (options.seconds) {
        out += "% time: " + seconds_text(*options.seconds) + " s\n";
    }
    return out;
}

std::string render_json(const Program& program, const AnalysisResult& result, const ReportOptions& options) {
    nlohmann::ordered_json doc;
    doc["results"] = nlohmann::ordered_json::array();
    for (const PredicateKey& p : program.predicates()) {
        auto it = result.interpretation.find(p);
        if (it == result.interpretation.end()) {
            continue;
        }
        nlohmann::ordered_json entry;
        entry["predicate"] = to_string(p);
        entry["atom"] = format_constrained_atom(p, it->second);
        entry["constraints"] = constraint_texts(it->second);
        doc["results"].push_back(std::move(entry));
    }
    if (options.counts) {
        doc["constraint_count"] = total_constraint_count(result.interpretation);
        doc["sccs"] = nlohmann::ordered_json::array();
        for (const SccStats& s : result.sccs) {
            nlohmann::ordered_json entry;
            entry["predicates"] = names(s.predicates);
            entry["iterations"] = s.iterations;
            entry["widening_points"] = names({s.widening_points.begin(), s.widening_points.end()});
            doc["sccs"].push_back(std::move(entry));
        }
        doc["narrowing_passes"] = result.narrowing_passes;
    }
    if (options.trace) {
        doc["trace"] = nlohmann::ordered_json::array();
        for (const TraceEvent& e : result.trace) {
            doc["trace"].push_back({{"iter", e.iteration},
                                    {"pred", to_string(e.predicate)},
                                    {"op", trace_op_name(e.op)},
                                    {"count", e.count}});
        }
    }
    if (options.seconds) {
        doc["time_seconds"] = *options.seconds;
    }
    return doc.dump(2) + "\n";
}

}  // namespace cha
