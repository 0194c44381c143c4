#include <morfwork/features.hpp>

#include <algorithm>
#include <cctype>

namespace morfwork
{
	namespace
	{
		constexpr std::array<std::string_view, kDimensionCount> kNames = {
			"agreement", "aspect", "case", "category", "possessive", "sense", "tense", "voice",
		};
		constexpr std::array<std::string_view, kDimensionCount> kLabels = {
			"Agreement", "Aspect", "Case", "Category", "Possessive", "Sense", "Tense", "Voice",
		};
		constexpr std::array<std::string_view, 4> kCategoryNames = { "noun", "adjective", "verb", "pronoun" };
	}

	std::string_view name(Dimension d) { return kNames[static_cast<std::size_t>(d)]; }
	std::string_view label(Dimension d) { return kLabels[static_cast<std::size_t>(d)]; }

	std::optional<Dimension> parseDimension(std::string_view s)
	{
		for (std::size_t i = 0; i < kNames.size(); ++i)
			if (kNames[i] == s) return static_cast<Dimension>(i);
		return std::nullopt;
	}

	std::string displayValue(Dimension d, std::string_view value)
	{
		if ((d == Dimension::Agreement || d == Dimension::Possessive) && value.size() == 3)
		{
			static constexpr std::array<std::string_view, 3> persons = { "1st", "2nd", "3rd" };
			const char p = value[0];
			const auto number = value.substr(1);
			if (p >= '1' && p <= '3' && (number == "sg" || number == "pl"))
			{
				return std::string(persons[p - '1']) + (number == "sg" ? " singular" : " plural");
			}
		}
		std::string out(value);
		std::replace(out.begin(), out.end(), '-', ' ');
		if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
		return out;
	}

	std::string_view name(Category c) { return kCategoryNames[static_cast<std::size_t>(c)]; }

	std::optional<Category> parseCategory(std::string_view s)
	{
		for (std::size_t i = 0; i < kCategoryNames.size(); ++i)
			if (kCategoryNames[i] == s) return static_cast<Category>(i);
		return std::nullopt;
	}

	bool isNominal(Category c) { return c != Category::Verb; }

	bool FeatureBundle::hasSuffix(std::string_view morpheme) const
	{
		return std::find(suffixes.begin(), suffixes.end(), morpheme) != suffixes.end();
	}
}
