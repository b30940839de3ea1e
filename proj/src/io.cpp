#include "horo/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "horo/errors.hpp"

namespace horo {

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_orbit_header(std::ostream& os, const Model& model, const FlowKind& flow, long long steps,
                        std::uint64_t seed)
{
    os << "# model=" << model.name() << " flow=" << flow.name();
    switch (flow.type) {
    case FlowType::HorocycleU:
    case FlowType::GeodesicD: os << " dt=" << format_double(flow.dt); break;
    case FlowType::BorelB:
        os << " dalpha=" << format_double(flow.dalpha) << " dbeta=" << format_double(flow.dbeta);
        break;
    case FlowType::Sol3U: os << " dbeta=" << format_double(flow.dbeta); break;
    }
    os << " steps=" << steps << " seed=" << seed << '\n';
    const auto legend = model.legend();
    for (std::size_t i = 0; i < legend.size(); ++i)
        os << "# c" << i + 1 << ": " << legend[i] << '\n';
    os << "time";
    for (std::size_t i = 0; i < legend.size(); ++i)
        os << ",c" << i + 1;
    os << '\n';
}

void write_orbit_row(std::ostream& os, const Model& model, const OrbitSample& s)
{
    os << format_double(s.time);
    for (double c : model.coordinates(s.point))
        os << ',' << format_double(c);
    os << '\n';
}

void write_orbit_csv(std::ostream& os, const Model& model, const OrbitSegment& orbit)
{
    write_orbit_header(os, model, orbit.flow, orbit.steps, orbit.seed);
    for (const auto& s : orbit.samples)
        write_orbit_row(os, model, s);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

CsvTable parse_csv(std::istream& in)
{
    CsvTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty())
            continue;
        if (line[0] == '#') {
            t.comments.push_back(line);
            continue;
        }
        auto cells = split(line, ',');
        if (t.header.empty()) {
            for (auto& c : cells)
                t.header.push_back(trim(c));
            continue;
        }
        if (cells.size() != t.header.size())
            throw ParseError("CSV line " + std::to_string(lineno) + ": expected " +
                             std::to_string(t.header.size()) + " cells, got " + std::to_string(cells.size()));
        std::vector<double> row;
        for (const auto& c : cells) {
            const std::string v = trim(c);
            std::size_t used = 0;
            double x = 0.0;
            try {
                x = std::stod(v, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (v.empty() || used != v.size())
                throw ParseError("CSV line " + std::to_string(lineno) + ": not a number: '" + v + "'");
            row.push_back(x);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty())
        throw ParseError("CSV has no header line");
    return t;
}

std::string density_json(const DensityReport& r)
{
    nlohmann::ordered_json j;
    j["model"] = r.model;
    j["flow"] = r.flow;
    j["steps"] = r.steps;
    j["seed"] = r.seed;
    j["bins"] = r.bins;
    j["visited"] = r.visited;
    j["total"] = r.total;
    j["fraction"] = r.fraction;
    return j.dump(2) + "\n";
}

namespace {

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Legend text for a column, taken from "# cK: ..." comment lines if present.
std::string column_label(const CsvTable& t, const std::string& col)
{
    const std::string prefix = "# " + col + ": ";
    for (const auto& c : t.comments)
        if (c.rfind(prefix, 0) == 0)
            return col + " (" + c.substr(prefix.size()) + ")";
    return col;
}

}  // namespace

std::string svg_plot(const CsvTable& t, const std::string& xcol, const std::string& ycol)
{
    auto index = [&](const std::string& c) {
        const auto it = std::find(t.header.begin(), t.header.end(), c);
        if (it == t.header.end())
            throw InvalidArgument("no column named '" + c + "'");
        return static_cast<std::size_t>(it - t.header.begin());
    };
    const std::size_t ix = index(xcol), iy = index(ycol);
    constexpr double W = 640, H = 480, M = 60;
    constexpr std::size_t kMaxMarkers = 20000;

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!t.rows.empty()) {
        x0 = x1 = t.rows[0][ix];
        y0 = y1 = t.rows[0][iy];
        for (const auto& r : t.rows) {
            x0 = std::min(x0, r[ix]);
            x1 = std::max(x1, r[ix]);
            y0 = std::min(y0, r[iy]);
            y1 = std::max(y1, r[iy]);
        }
    }
    if (x1 - x0 < 1e-12) {
        x0 -= 0.5;
        x1 += 0.5;
    }
    if (y1 - y0 < 1e-12) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    auto px = [&](double x) { return M + (x - x0) / (x1 - x0) * (W - 2 * M); };
    auto py = [&](double y) { return H - M - (y - y0) / (y1 - y0) * (H - 2 * M); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n"
       << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n"
       << "<rect x=\"60\" y=\"60\" width=\"520\" height=\"360\" fill=\"none\" stroke=\"black\"/>\n";
    const std::size_t stride = std::max<std::size_t>(1, (t.rows.size() + kMaxMarkers - 1) / kMaxMarkers);
    os << "<g fill=\"steelblue\">\n";
    for (std::size_t i = 0; i < t.rows.size(); i += stride)
        os << "<circle cx=\"" << fmt("%.2f", px(t.rows[i][ix])) << "\" cy=\"" << fmt("%.2f", py(t.rows[i][iy]))
           << "\" r=\"1.5\"/>\n";
    os << "</g>\n";
    os << "<text x=\"320\" y=\"465\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(column_label(t, xcol))
       << "</text>\n"
       << "<text x=\"18\" y=\"240\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 240)\">"
       << xml_escape(column_label(t, ycol)) << "</text>\n"
       << "<text x=\"60\" y=\"438\" font-size=\"11\">" << fmt("%.4g", x0) << "</text>\n"
       << "<text x=\"580\" y=\"438\" text-anchor=\"end\" font-size=\"11\">" << fmt("%.4g", x1) << "</text>\n"
       << "<text x=\"55\" y=\"420\" text-anchor=\"end\" font-size=\"11\">" << fmt("%.4g", y0) << "</text>\n"
       << "<text x=\"55\" y=\"68\" text-anchor=\"end\" font-size=\"11\">" << fmt("%.4g", y1) << "</text>\n"
       << "</svg>\n";
    return os.str();
}

void write_stream_atomic(const std::string& path, const std::function<void(std::ostream&)>& fill)
{
    namespace fs = std::filesystem;
    fs::path tmp(path);
    tmp += ".tmp";
    std::error_code ec;
    try {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open '" + tmp.string() + "' for writing");
        fill(out);
        out.flush();
        if (!out)
            throw Error("failed writing '" + tmp.string() + "'");
    } catch (...) {
        fs::remove(tmp, ec);
        throw;
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("cannot move output into place at '" + path + "'");
    }
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    write_stream_atomic(path, [&](std::ostream& os) { os << content; });
}

std::map<std::string, std::string> parse_key_values(std::istream& in)
{
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty key");
        if (!out.emplace(key, value).second)
            throw ParseError("line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    }
    return out;
}

IntMatrix2 parse_int_matrix(const std::string& s)
{
    std::istringstream ss(s);
    IntMatrix2 m{};
    std::string tok;
    std::size_t n = 0;
    while (ss >> tok) {
        if (n == 4)
            throw ParseError("matrix needs exactly 4 integers: '" + s + "'");
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size())
            throw ParseError("matrix entry is not an integer: '" + tok + "'");
        m[n++] = v;
    }
    if (n != 4)
        throw ParseError("matrix needs exactly 4 integers: '" + s + "'");
    return m;
}

Model build_model(const ModelDescriptor& d)
{
    if (d.model == "t3a")
        return Model::t3a(d.A);
    if (d.model == "octagon")
        return Model::octagon();
    if (d.model == "octagon_so3")
        return Model::octagon_so3(d.seed);
    if (d.model == "octagon_boundary")
        return Model::octagon_boundary();
    if (d.model == "modular")
        return Model::modular();
    if (d.model == "modular_boundary")
        return Model::modular_boundary();
    throw InvalidArgument("unknown model '" + d.model + "'");
}

}  // namespace horo
