#include "mdgemm/case_label.hpp"

#include "mdgemm/dispatch.hpp"

namespace mdgemm {

CaseId CaseLabel::case_id() const {
    return classify_case(c.domain, a.domain, b.domain);
}

std::string CaseLabel::str() const {
    return {dtype_letter(c), dtype_letter(a), dtype_letter(b),
            precision_letter(comp)};
}

CaseLabel CaseLabel::parse(const std::string& s) {
    if (s.size() != 4)
        throw Error("case label '" + s + "' must have exactly four letters "
                    "(C, A, B datatypes and computation precision)");
    CaseLabel l;
    l.c = dtype_from_letter(s[0]);
    l.a = dtype_from_letter(s[1]);
    l.b = dtype_from_letter(s[2]);
    l.comp = precision_from_letter(s[3]);
    return l;
}

std::vector<CaseLabel> CaseLabel::all() {
    static const Datatype dts[] = {dt_s, dt_d, dt_c, dt_z};
    static const Precision ps[] = {Precision::Single, Precision::Double};
    std::vector<CaseLabel> out;
    out.reserve(128);
    for (Datatype c : dts)
        for (Datatype a : dts)
            for (Datatype b : dts)
                for (Precision p : ps)
                    out.push_back(CaseLabel{c, a, b, p});
    return out;
}

} // namespace mdgemm
