#pragma once

#include <morfwork/corpus.hpp>
#include <morfwork/features.hpp>

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace morfwork
{
	struct Posting
	{
		std::uint32_t sentence = 0;
		std::uint32_t token = 0;

		auto operator<=>(const Posting&) const = default;
	};

	using PostingList = std::vector<Posting>;

	/// Inverted index from feature values, morpheme names and roots to the
	/// chosen readings that carry them. Lists are sorted and duplicate-free.
	struct FeatureIndex
	{
		std::map<std::pair<Dimension, std::string>, PostingList> postings;
		std::map<std::string, PostingList> suffixPostings;
		std::map<std::string, PostingList> rootPostings;

		const PostingList& lookup(Dimension d, const std::string& value) const;
		const PostingList& suffix(const std::string& name) const;
		const PostingList& root(const std::string& root) const;
		bool empty() const { return postings.empty() && suffixPostings.empty() && rootPostings.empty(); }

		bool operator==(const FeatureIndex&) const = default;
	};

	FeatureIndex buildIndex(const TaggedCorpus& tagged);

	inline constexpr int kIndexFormatVersion = 1;

	std::string serializeIndex(const FeatureIndex& index);
	/// Throws VersionMismatch, ChecksumError or ParseError.
	FeatureIndex parseIndex(std::string_view text, const std::string& sourceName = "<index>");
	void saveIndex(const FeatureIndex& index, const std::filesystem::path& path);
	FeatureIndex loadIndex(const std::filesystem::path& path);

	PostingList intersect(const PostingList& a, const PostingList& b);
	PostingList unite(const PostingList& a, const PostingList& b);
	PostingList subtract(const PostingList& a, const PostingList& b);
}
