#include "mdgemm/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mdgemm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(value, &pos);
        if (pos != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw Error("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
}

const char* const kKeys[] = {
    "gemm.mc", "gemm.nc", "gemm.kc",
    "gemm.mc.single", "gemm.nc.single", "gemm.kc.single",
    "gemm.mc.double", "gemm.nc.double", "gemm.kc.double",
    "gemm.threads",
    "ukr.mr", "ukr.nr",
    "ukr.mr.single", "ukr.nr.single", "ukr.mr.double", "ukr.nr.double",
    "ukr.preference", "ctemp.enable",
};

std::string env_name(const std::string& key) {
    std::string out = "MDGEMM_";
    for (char ch : key)
        out += ch == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return out;
}

} // namespace

void Config::set(const std::string& key, const std::string& value) {
    auto both = [&](std::int64_t BlockingParams::* field) {
        std::int64_t v = parse_int(key, value);
        single_params.*field = v;
        double_params.*field = v;
    };
    auto one = [&](BlockingParams& bp, std::int64_t BlockingParams::* field) {
        bp.*field = parse_int(key, value);
    };
    auto both_reg = [&](int BlockingParams::* field) {
        std::int64_t v = parse_int(key, value);
        single_params.*field = static_cast<int>(v);
        double_params.*field = static_cast<int>(v);
    };
    auto one_reg = [&](BlockingParams& bp, int BlockingParams::* field) {
        bp.*field = static_cast<int>(parse_int(key, value));
    };

    if (key == "gemm.mc") both(&BlockingParams::mc);
    else if (key == "gemm.nc") both(&BlockingParams::nc);
    else if (key == "gemm.kc") both(&BlockingParams::kc);
    else if (key == "gemm.mc.single") one(single_params, &BlockingParams::mc);
    else if (key == "gemm.nc.single") one(single_params, &BlockingParams::nc);
    else if (key == "gemm.kc.single") one(single_params, &BlockingParams::kc);
    else if (key == "gemm.mc.double") one(double_params, &BlockingParams::mc);
    else if (key == "gemm.nc.double") one(double_params, &BlockingParams::nc);
    else if (key == "gemm.kc.double") one(double_params, &BlockingParams::kc);
    else if (key == "gemm.threads") threads = static_cast<int>(parse_int(key, value));
    else if (key == "ukr.mr") both_reg(&BlockingParams::mr);
    else if (key == "ukr.nr") both_reg(&BlockingParams::nr);
    else if (key == "ukr.mr.single") one_reg(single_params, &BlockingParams::mr);
    else if (key == "ukr.nr.single") one_reg(single_params, &BlockingParams::nr);
    else if (key == "ukr.mr.double") one_reg(double_params, &BlockingParams::mr);
    else if (key == "ukr.nr.double") one_reg(double_params, &BlockingParams::nr);
    else if (key == "ukr.preference") {
        if (value == "column") preference = Preference::Column;
        else if (value == "row") preference = Preference::Row;
        else throw Error("config: ukr.preference expects 'column' or 'row', got '" + value + "'");
    } else if (key == "ctemp.enable") {
        if (value == "auto") ctemp = CTempMode::Auto;
        else if (value == "on") ctemp = CTempMode::On;
        else if (value == "off") ctemp = CTempMode::Off;
        else throw Error("config: ctemp.enable expects 'auto', 'on' or 'off', got '" + value + "'");
    } else {
        throw Error("config: unknown key '" + key + "'");
    }
}

Config Config::load(const std::optional<std::string>& file, bool apply_env) {
    Config cfg;
    std::optional<std::string> path = file;
    if (!path) {
        if (const char* env = std::getenv("MDGEMM_CONFIG"); env && *env)
            path = std::string(env);
    }
    if (path) {
        std::ifstream in(*path);
        if (!in)
            throw Error("config: cannot open '" + *path + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string t = trim(line);
            if (t.empty() || t[0] == '#')
                continue;
            std::size_t eq = t.find('=');
            if (eq == std::string::npos)
                throw Error("config: line " + std::to_string(lineno) + " of '" + *path +
                            "' is not key=value");
            cfg.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
        }
    }
    if (apply_env) {
        for (const char* key : kKeys) {
            if (const char* v = std::getenv(env_name(key).c_str()); v && *v)
                cfg.set(key, v);
        }
    }
    cfg.validate();
    return cfg;
}

void Config::validate() const {
    auto check = [](const BlockingParams& bp, const char* which) {
        auto fail = [&](const std::string& msg) {
            throw Error(std::string("config: ") + which + " blocking invalid: " + msg);
        };
        if (bp.mr < 2 || bp.nr < 2 || bp.mr > kMaxUkrDim || bp.nr > kMaxUkrDim)
            fail("mr/nr must lie in [2, " + std::to_string(kMaxUkrDim) + "]");
        if (bp.mr % 2 != 0 || bp.nr % 2 != 0)
            fail("mr/nr must be even");
        if (bp.mc < bp.mr || bp.nc < bp.nr || bp.kc < 2)
            fail("mc/nc/kc too small");
        if (bp.mc % bp.mr != 0)
            fail("mc must be a multiple of mr");
        if (bp.nc % bp.nr != 0)
            fail("nc must be a multiple of nr");
        if (bp.mc % 2 != 0 || bp.nc % 2 != 0 || bp.kc % 2 != 0)
            fail("mc/nc/kc must be even");
    };
    check(single_params, "single");
    check(double_params, "double");
    if (threads < 1 || threads > 1024)
        throw Error("config: gemm.threads must lie in [1, 1024]");
}

std::string Config::describe() const {
    std::ostringstream os;
    auto bp = [&](const BlockingParams& p, const char* name) {
        os << name << ": mc=" << p.mc << " nc=" << p.nc << " kc=" << p.kc
           << " mr=" << p.mr << " nr=" << p.nr << "\n";
    };
    bp(single_params, "single");
    bp(double_params, "double");
    os << "threads: " << threads << "\n";
    os << "ukr.preference: " << (preference == Preference::Column ? "column" : "row") << "\n";
    os << "ctemp.enable: "
       << (ctemp == CTempMode::Auto ? "auto" : ctemp == CTempMode::On ? "on" : "off")
       << "\n";
    return os.str();
}

} // namespace mdgemm
