#include "sfint/vars.hpp"

#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace sfint {

namespace {

struct VarInfo {
    std::string name;
    int tier;          // 0,1,2 for x,y,z; 3 for everything else
    std::string stem;  // name with any trailing digits removed
    long long suffix;  // numeric value of trailing digits, -1 if none
};

VarInfo make_info(const std::string& name) {
    VarInfo vi;
    vi.name = name;
    if (name == "x") vi.tier = 0;
    else if (name == "y") vi.tier = 1;
    else if (name == "z") vi.tier = 2;
    else vi.tier = 3;
    size_t i = name.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
    vi.stem = name.substr(0, i);
    vi.suffix = -1;
    if (i < name.size() && name.size() - i <= 12) vi.suffix = std::stoll(name.substr(i));
    return vi;
}

std::shared_mutex& reg_mutex() {
    static std::shared_mutex m;
    return m;
}
std::deque<VarInfo>& reg_infos() {
    static std::deque<VarInfo> d;
    return d;
}
std::unordered_map<std::string, VarId>& reg_index() {
    static std::unordered_map<std::string, VarId> m;
    return m;
}

} // namespace

VarId var_id(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    {
        std::shared_lock lk(reg_mutex());
        auto it = reg_index().find(name);
        if (it != reg_index().end()) return it->second;
    }
    std::unique_lock lk(reg_mutex());
    auto it = reg_index().find(name);
    if (it != reg_index().end()) return it->second;
    VarId id = static_cast<VarId>(reg_infos().size());
    reg_infos().push_back(make_info(name));
    reg_index().emplace(name, id);
    return id;
}

bool var_registered(const std::string& name) {
    std::shared_lock lk(reg_mutex());
    return reg_index().count(name) > 0;
}

const std::string& var_name(VarId v) {
    std::shared_lock lk(reg_mutex());
    return reg_infos().at(static_cast<size_t>(v)).name;
}

int var_order(VarId a, VarId b) {
    if (a == b) return 0;
    std::shared_lock lk(reg_mutex());
    const VarInfo& ia = reg_infos().at(static_cast<size_t>(a));
    const VarInfo& ib = reg_infos().at(static_cast<size_t>(b));
    if (ia.tier != ib.tier) return ia.tier < ib.tier ? -1 : 1;
    if (ia.stem != ib.stem) return ia.stem < ib.stem ? -1 : 1;
    if (ia.suffix != ib.suffix) return ia.suffix < ib.suffix ? -1 : 1;
    return ia.name < ib.name ? -1 : (ia.name == ib.name ? 0 : 1);
}

VarId var_x() {
    static VarId v = var_id("x");
    return v;
}
VarId var_y() {
    static VarId v = var_id("y");
    return v;
}
VarId var_z() {
    static VarId v = var_id("z");
    return v;
}

} // namespace sfint
