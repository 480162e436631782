#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>

#include <json.hpp>

#include "choreo/effect_program.hpp"
#include "choreo/errors.hpp"

namespace choreo {

/// Canonical wire codec: UTF-8 JSON with a fixed schema per payload type.
/// Integers are JSON numbers, strings JSON strings, booleans JSON booleans,
/// optional<T> is null or T's encoding, and sum types use
/// {"fields": [...], "tag": "..."} with their declared tag names.
///
/// Specialize WireFormat<T> to make a type serializable:
///
///   template <> struct choreo::WireFormat<MyType> {
///     static nlohmann::json encode(const MyType&);
///     static MyType decode(const nlohmann::json&);
///   };
///
/// decode must reject malformed shapes with CodecError; round trips are
/// exact for every serializable type.
template <typename T>
struct WireFormat;

template <typename T>
concept WireSerializable = requires(const T& value, const nlohmann::json& j) {
  { WireFormat<T>::encode(value) } -> std::convertible_to<nlohmann::json>;
  { WireFormat<T>::decode(j) } -> std::convertible_to<T>;
};

namespace detail {

inline void expect_wire(bool ok, const char* what) {
  if (!ok) throw CodecError(std::string("malformed wire payload: ") + what);
}

}  // namespace detail

template <WireSerializable T>
std::string encode_wire(const T& value) {
  return WireFormat<T>::encode(value).dump();
}

template <WireSerializable T>
T decode_wire(const std::string& bytes) {
  nlohmann::json j = nlohmann::json::parse(bytes, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw CodecError("malformed wire payload: not valid JSON");
  return WireFormat<T>::decode(j);
}

template <>
struct WireFormat<bool> {
  static nlohmann::json encode(bool v) { return v; }
  static bool decode(const nlohmann::json& j) {
    detail::expect_wire(j.is_boolean(), "expected boolean");
    return j.get<bool>();
  }
};

template <>
struct WireFormat<std::int64_t> {
  static nlohmann::json encode(std::int64_t v) { return v; }
  static std::int64_t decode(const nlohmann::json& j) {
    detail::expect_wire(j.is_number_integer(), "expected integer");
    return j.get<std::int64_t>();
  }
};

template <>
struct WireFormat<int> {
  static nlohmann::json encode(int v) { return v; }
  static int decode(const nlohmann::json& j) {
    detail::expect_wire(j.is_number_integer(), "expected integer");
    return static_cast<int>(j.get<std::int64_t>());
  }
};

template <>
struct WireFormat<std::string> {
  static nlohmann::json encode(const std::string& v) { return v; }
  static std::string decode(const nlohmann::json& j) {
    detail::expect_wire(j.is_string(), "expected string");
    return j.get<std::string>();
  }
};

template <WireSerializable T>
struct WireFormat<std::optional<T>> {
  static nlohmann::json encode(const std::optional<T>& v) {
    if (!v) return nullptr;
    return WireFormat<T>::encode(*v);
  }
  static std::optional<T> decode(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    return WireFormat<T>::decode(j);
  }
};

template <>
struct WireFormat<Unit> {
  static nlohmann::json encode(Unit) { return nlohmann::json::array(); }
  static Unit decode(const nlohmann::json& j) {
    detail::expect_wire(j.is_array() && j.empty(), "expected unit");
    return Unit{};
  }
};

}  // namespace choreo
