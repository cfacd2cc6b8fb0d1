// SPDX-FileCopyrightText: Contributors to the suc-benders project
//
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <cmath>
#include <ostream>
#include <string_view>

#include "suc/lp_backend.hpp"

namespace suc {

namespace {

std::string sanitize(std::string_view name, char prefix, int id) {
    static constexpr std::string_view allowed = "!\"#$%&()/,.;?@_`'{}|~";
    if (name.empty()) return std::string(1, prefix) + std::to_string(id);
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || allowed.find(c) != std::string_view::npos;
        out.push_back(ok ? c : '_');
    }
    if (std::isdigit(static_cast<unsigned char>(out.front())) || out.front() == '.' || out.front() == 'e' ||
        out.front() == 'E')
        out.insert(out.begin(), '_');
    return out;
}

void write_number(std::ostream& out, double v) {
    if (v == kInf)
        out << "+inf";
    else if (v == -kInf)
        out << "-inf";
    else
        out << v;
}

void write_terms(std::ostream& out, const std::vector<std::string>& names, const std::vector<Term>& terms) {
    if (terms.empty()) {
        out << " 0 " << names.front();
        return;
    }
    for (const auto& t : terms) {
        out << (t.coef < 0 ? " - " : " + ") << std::abs(t.coef) << ' ' << names[t.var];
    }
}

}  // namespace

void write_lp(const ModelHandle& model, std::ostream& out) {
    const auto old_precision = out.precision(17);
    std::vector<std::string> names;
    names.reserve(model.num_variables());
    for (int j = 0; j < model.num_variables(); ++j) names.push_back(sanitize(model.variable(j).name, 'x', j));
    if (names.empty()) names.emplace_back("x0");

    out << "\\ exported by suc\nMinimize\n obj:";
    bool any = false;
    for (int j = 0; j < model.num_variables(); ++j) {
        const double c = model.variable(j).cost;
        if (c == 0.0) continue;
        out << (c < 0 ? " - " : " + ") << std::abs(c) << ' ' << names[j];
        any = true;
    }
    if (model.objective_offset() != 0.0) {
        out << (model.objective_offset() < 0 ? " - " : " + ") << std::abs(model.objective_offset());
        any = true;
    }
    if (!any) out << " 0 " << names.front();
    out << "\nSubject To\n";
    for (int i = 0; i < model.num_rows(); ++i) {
        const auto& r = model.row(i);
        out << ' ' << sanitize(r.name, 'c', i) << ':';
        switch (r.sense()) {
            case Sense::Equal:
                write_terms(out, names, r.terms);
                out << " = ";
                write_number(out, r.lower);
                break;
            case Sense::LessEqual:
                write_terms(out, names, r.terms);
                out << " <= ";
                write_number(out, r.upper);
                break;
            case Sense::GreaterEqual:
                write_terms(out, names, r.terms);
                out << " >= ";
                write_number(out, r.lower);
                break;
            case Sense::Range:
                out << ' ';
                write_number(out, r.lower);
                out << " <=";
                write_terms(out, names, r.terms);
                out << " <= ";
                write_number(out, r.upper);
                break;
        }
        out << '\n';
    }
    out << "Bounds\n";
    for (int j = 0; j < model.num_variables(); ++j) {
        const auto& v = model.variable(j);
        if (v.lower == -kInf && v.upper == kInf) {
            out << ' ' << names[j] << " free\n";
        } else {
            out << ' ';
            write_number(out, v.lower);
            out << " <= " << names[j] << " <= ";
            write_number(out, v.upper);
            out << '\n';
        }
    }
    bool header = false;
    for (int j = 0; j < model.num_variables(); ++j) {
        if (model.variable(j).type != VarType::Binary) continue;
        if (!header) out << "General\n";
        header = true;
        out << ' ' << names[j] << '\n';
    }
    out << "End\n";
    out.precision(old_precision);
}

}  // namespace suc
