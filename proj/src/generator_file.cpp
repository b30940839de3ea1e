#include "horo/generator_file.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "horo/errors.hpp"

namespace horo {

namespace {

std::vector<double> read_numbers(std::istringstream& ss, int line)
{
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line) + ": not a number: '" + tok + "'");
        }
    }
    return out;
}

}  // namespace

GeneratedGroup parse_generators(std::istream& in)
{
    std::vector<GeneratedGroup::Generator> gens;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::istringstream ss(raw);
        std::string name, kind;
        if (!(ss >> name))
            continue;
        if (!(ss >> kind))
            throw ParseError("line " + std::to_string(line) + ": missing kind after '" + name + "'");
        const auto v = read_numbers(ss, line);
        auto need = [&](std::size_t n, std::size_t alt = 0) {
            if (v.size() != n && (alt == 0 || v.size() != alt))
                throw ParseError("line " + std::to_string(line) + ": kind '" + kind + "' expects " +
                                 std::to_string(n) + " numbers, got " + std::to_string(v.size()));
        };
        try {
            if (kind == "psl") {
                need(4);
                gens.push_back({name, {Moebius(v[0], v[1], v[2], v[3]), TrivialElement{}}});
            } else if (kind == "affine") {
                need(6);
                gens.push_back({name, {Moebius(v[0], v[1], v[2], v[3]), AffineMap(v[4], v[5])}});
            } else if (kind == "so3") {
                need(8);
                gens.push_back({name, {Moebius(v[0], v[1], v[2], v[3]), Quaternion(v[4], v[5], v[6], v[7])}});
            } else if (kind == "circle") {
                need(4, 8);
                const Moebius m(v[0], v[1], v[2], v[3]);
                const Moebius g = v.size() == 8 ? Moebius(v[4], v[5], v[6], v[7]) : m;
                gens.push_back({name, {m, g}});
            } else {
                throw ParseError("line " + std::to_string(line) + ": unknown kind '" + kind + "'");
            }
        } catch (const InvalidArgument& e) {
            throw ParseError("line " + std::to_string(line) + ": " + e.what());
        }
    }
    if (gens.empty())
        throw ParseError("no generators found");
    try {
        return GeneratedGroup(std::move(gens));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

GeneratedGroup parse_generators_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open generator file '" + path + "'");
    return parse_generators(in);
}

}  // namespace horo
