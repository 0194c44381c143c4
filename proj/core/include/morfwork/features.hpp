#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace morfwork
{
	/// Scalar feature dimensions a learner can search on. Suffix and root are
	/// list/string valued and live directly on FeatureBundle.
	enum class Dimension : std::uint8_t
	{
		Agreement,
		Aspect,
		Case,
		Category,
		Possessive,
		Sense,
		Tense,
		Voice,
	};

	inline constexpr std::size_t kDimensionCount = 8;
	inline constexpr std::array<Dimension, kDimensionCount> kDimensions = {
		Dimension::Agreement, Dimension::Aspect, Dimension::Case, Dimension::Category,
		Dimension::Possessive, Dimension::Sense, Dimension::Tense, Dimension::Voice,
	};

	std::string_view name(Dimension d);
	std::optional<Dimension> parseDimension(std::string_view s);
	/// Title-case label, e.g. "Agreement".
	std::string_view label(Dimension d);
	/// Human-readable value, e.g. agreement "3sg" -> "3rd singular",
	/// sense "negative-capability" -> "Negative capability".
	std::string displayValue(Dimension d, std::string_view value);

	enum class Category : std::uint8_t
	{
		Noun,
		Adjective,
		Verb,
		Pronoun,
	};

	inline constexpr std::array<Category, 4> kCategories = {
		Category::Noun, Category::Adjective, Category::Verb, Category::Pronoun,
	};

	std::string_view name(Category c);
	std::optional<Category> parseCategory(std::string_view s);
	/// Nouns, adjectives and pronouns inflect in the nominal paradigm.
	bool isNominal(Category c);

	/// One morphological reading's features. Category is always set on
	/// bundles produced by the analyzer; every other dimension is optional.
	struct FeatureBundle
	{
		std::array<std::optional<std::string>, kDimensionCount> values;
		std::vector<std::string> suffixes;
		std::string root;

		const std::optional<std::string>& operator[](Dimension d) const
		{
			return values[static_cast<std::size_t>(d)];
		}
		std::optional<std::string>& operator[](Dimension d)
		{
			return values[static_cast<std::size_t>(d)];
		}

		bool has(Dimension d, std::string_view value) const
		{
			const auto& v = (*this)[d];
			return v && *v == value;
		}
		bool hasSuffix(std::string_view morpheme) const;

		bool operator==(const FeatureBundle&) const = default;
	};
}
