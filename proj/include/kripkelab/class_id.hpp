#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace kripkelab {

/// The six modally defined frame classes.
enum class ClassId { KD5, KD45, K5B, S5, GL3, GRZ3 };

/// Whether a class is taken whole or restricted to its connected members.
enum class ClassScope { All, Connected };

inline constexpr std::array<ClassId, 6> kAllClasses = {
    ClassId::KD5, ClassId::KD45, ClassId::K5B, ClassId::S5, ClassId::GL3, ClassId::GRZ3};
inline constexpr std::array<ClassScope, 2> kAllScopes = {ClassScope::All, ClassScope::Connected};

/// CLI spelling: kd5, kd45, k5b, s5, gl3, grz3.
std::string_view to_string(ClassId c) noexcept;
std::string_view to_string(ClassScope s) noexcept;
std::optional<ClassId> parse_class_id(std::string_view text) noexcept;
std::optional<ClassScope> parse_class_scope(std::string_view text) noexcept;

}  // namespace kripkelab
