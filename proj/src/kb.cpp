#include "graderoute/kb.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "graderoute/errors.hpp"
#include "graderoute/text.hpp"

namespace graderoute {

namespace {

void validate_record(const RouteRecord& r) {
    if (r.path.empty() || r.path.front() != r.source || r.path.back() != r.dest) {
        throw ValidationError("route path must run from source to dest");
    }
    std::set<NodeId> seen(r.path.begin(), r.path.end());
    if (seen.size() != r.path.size()) {
        throw ValidationError("route path repeats a node");
    }
    if (r.fitness < 0.0 || r.fitness > 1.0) {
        throw ValidationError("route fitness must lie in [0,1]");
    }
}

} // namespace

void KnowledgeBase::record(const RouteRecord& r) {
    validate_record(r);
    const Key key{r.source, r.dest, r.graded};
    auto it = records_.find(key);
    if (it == records_.end()) {
        records_.emplace(key, r);
    } else if (r.fitness > it->second.fitness) {
        it->second = r;
    }
}

std::optional<RouteRecord> KnowledgeBase::query(NodeId source, NodeId dest,
                                                bool graded) const {
    auto it = records_.find(Key{source, dest, graded});
    if (it == records_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void KnowledgeBase::save(std::ostream& out) const {
    out << "kb v1\n";
    for (const auto& [key, r] : records_) {
        out << "route " << r.source << " " << r.dest << " " << (r.graded ? 1 : 0)
            << " " << format_double(r.fitness) << " " << r.iterations_to_converge
            << " " << r.seed << " ";
        for (std::size_t i = 0; i < r.path.size(); ++i) {
            if (i > 0) {
                out << "-";
            }
            out << r.path[i];
        }
        out << "\n";
    }
}

void KnowledgeBase::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    save(out);
    if (!out.flush()) {
        throw IoError("write failed for " + path.string());
    }
}

KnowledgeBase KnowledgeBase::load(std::istream& in) {
    LineScanner scanner(in);
    if (!scanner.next() || scanner.line() != "kb v1") {
        throw ParseError("expected header 'kb v1'", scanner.line_number());
    }
    KnowledgeBase kb;
    while (scanner.next()) {
        auto tok = split_ws(scanner.line());
        const int ln = scanner.line_number();
        RouteRecord r;
        std::uint32_t graded = 0;
        if (tok.size() != 8 || tok[0] != "route" || !parse_u32(tok[1], r.source) ||
            !parse_u32(tok[2], r.dest) || !parse_u32(tok[3], graded) || graded > 1 ||
            !parse_double(tok[4], r.fitness) ||
            !parse_u32(tok[5], r.iterations_to_converge) || !parse_u64(tok[6], r.seed)) {
            throw ParseError("malformed route line", ln);
        }
        r.graded = graded == 1;
        for (std::string_view part : split_on(tok[7], '-')) {
            NodeId n = 0;
            if (!parse_u32(part, n)) {
                throw ParseError("malformed route path", ln);
            }
            r.path.push_back(n);
        }
        try {
            kb.record(r);
        } catch (const ValidationError& e) {
            throw ParseError(std::string(e.what()), ln);
        }
    }
    return kb;
}

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return KnowledgeBase::load(in);
}

} // namespace graderoute
