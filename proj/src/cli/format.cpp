#include <tepred/cli.hpp>
#include <tepred/planner.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tep::cli {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

std::string cell_text(const Cell& c, bool rounded) {
    return std::visit(
        [&](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, double>) {
                return rounded && c.digits >= 0 ? format_fixed(v, c.digits) : format_full(v);
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return v;
            }
        },
        c.value);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) {
                    return nullptr;
                }
                return v;
            } else {
                return v;
            }
        },
        c.value);
}

std::string render_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.headers.size(); ++i) {
        os << (i ? "," : "") << csv_escape(t.headers[i]);
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_escape(cell_text(row[i], false));
        }
        os << '\n';
    }
    return os.str();
}

std::string render_markdown(const Table& t) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(t.headers.size(), 3);
    for (std::size_t i = 0; i < t.headers.size(); ++i) {
        width[i] = std::max(width[i], t.headers[i].size());
    }
    for (const auto& row : t.rows) {
        std::vector<std::string> texts;
        for (std::size_t i = 0; i < row.size(); ++i) {
            texts.push_back(cell_text(row[i], true));
            width[i] = std::max(width[i], texts.back().size());
        }
        cells.push_back(std::move(texts));
    }
    auto line = [&](const std::vector<std::string>& items) {
        std::string s = "|";
        for (std::size_t i = 0; i < width.size(); ++i) {
            const std::string& v = i < items.size() ? items[i] : std::string();
            s += " " + v + std::string(width[i] - v.size(), ' ') + " |";
        }
        return s + "\n";
    };
    std::ostringstream os;
    if (!t.title.empty()) {
        os << "### " << t.title << "\n\n";
    }
    os << line(t.headers);
    std::string rule = "|";
    for (std::size_t w : width) {
        rule += std::string(w + 2, '-') + "|";
    }
    os << rule << '\n';
    for (const auto& r : cells) {
        os << line(r);
    }
    return os.str();
}

} // namespace

std::optional<Format> parse_format(const std::string& name) {
    if (name == "csv") {
        return Format::Csv;
    }
    if (name == "markdown" || name == "md") {
        return Format::Markdown;
    }
    if (name == "json") {
        return Format::Json;
    }
    return std::nullopt;
}

std::string format_full(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double v, int digits) {
    if (!std::isfinite(v)) {
        return format_full(v);
    }
    const double r = planner::round_half_away(v, digits);
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", digits, r == 0.0 ? 0.0 : r);
    return buf.data();
}

std::string render(const std::vector<Table>& tables, Format format) {
    if (format == Format::Json) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::object();
        for (const Table& t : tables) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (const auto& row : t.rows) {
                nlohmann::ordered_json obj = nlohmann::ordered_json::object();
                for (std::size_t i = 0; i < row.size() && i < t.headers.size(); ++i) {
                    obj[t.headers[i]] = cell_json(row[i]);
                }
                rows.push_back(std::move(obj));
            }
            doc[t.title.empty() ? "rows" : t.title] = std::move(rows);
        }
        return doc.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i > 0) {
            out += "\n";
        }
        out += format == Format::Csv ? render_csv(tables[i]) : render_markdown(tables[i]);
    }
    return out;
}

} // namespace tep::cli
