#pragma once

#include <morfwork/features.hpp>
#include <morfwork/lexicon.hpp>
#include <morfwork/phonology.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace morfwork
{
	enum class Paradigm : std::uint8_t
	{
		Nominal,
		Verbal,
	};

	Paradigm paradigmOf(Category c);

	/// Inflectional slots of the nominal and verbal paradigms.
	enum class Slot : std::uint8_t
	{
		Plural,
		Possessive,
		Case,
		Relative,
		Voice,
		Negation,
		Modal,
		MainTense,
		Question,
		SecondTense,
		Agreement,
	};

	std::string_view name(Slot s);
	std::optional<Slot> parseSlot(std::string_view s);
	/// The feature dimension a slot's morphemes may assign, if any.
	std::optional<Dimension> ownedDimension(Slot s);

	struct Morpheme
	{
		std::string name;
		/// Starts with '+'; empty for zero morphemes such as 3SG.
		std::u32string lexicalForm;
		Slot slot = Slot::Plural;
		std::vector<std::pair<Dimension, std::string>> features;

		bool isZero() const { return lexicalForm.empty(); }
		/// "+lAr", or "0" for a zero morpheme.
		std::string formText() const;
	};

	struct SlotSpec
	{
		Slot slot;
		bool optional;
	};

	/// Slot-order automaton plus morpheme inventory, loaded from a paradigm
	/// file. States are (paradigm, next slot, assigned dimensions); the graph
	/// is acyclic and immutable after load.
	class Morphotactics
	{
	public:
		using StateId = int;

		struct Transition
		{
			const Morpheme* morpheme;
			StateId target;
		};

		static Morphotactics parse(std::string_view text, const std::string& sourceName = "<paradigms>");
		static Morphotactics load(const std::filesystem::path& path);

		Morphotactics(const Morphotactics& other);
		Morphotactics& operator=(const Morphotactics& other);
		Morphotactics(Morphotactics&&) noexcept = default;
		Morphotactics& operator=(Morphotactics&&) noexcept = default;

		const std::vector<Morpheme>& morphemes() const { return morphemes_; }
		const Morpheme* find(std::string_view name) const;
		const std::vector<SlotSpec>& slots(Paradigm p) const { return slots_[static_cast<int>(p)]; }

		StateId start(Category c) const { return starts_[static_cast<int>(paradigmOf(c))]; }
		bool accepting(StateId s) const { return states_.at(s).accepting; }
		const std::vector<Transition>& transitions(StateId s) const { return states_.at(s).transitions; }
		/// Morphemes legal at `s`, including those reached by skipping optional slots.
		std::vector<const Morpheme*> successors(StateId s) const;
		std::optional<StateId> next(StateId s, const Morpheme& m) const;
		std::size_t stateCount() const { return states_.size(); }
		/// Slot index the state will fill next; equals the slot count at the end.
		std::size_t position(StateId s) const { return states_.at(s).position; }

		/// Runs `names` from the category start; nullopt if rejected.
		std::optional<std::vector<const Morpheme*>> acceptPath(Category c, const std::vector<std::string>& names) const;

		/// Every accepted morpheme path of length <= maxSuffixes.
		std::vector<std::vector<const Morpheme*>> enumeratePaths(Category c, std::size_t maxSuffixes) const;
		/// Number of accepted paths of length <= maxSuffixes, by dynamic programming.
		std::size_t countPaths(Category c, std::size_t maxSuffixes) const;

		/// Values each dimension can take given the inventory (plus categories
		/// and the unmarked nominative case).
		std::map<Dimension, std::set<std::string>> vocabulary() const;

	private:
		Morphotactics() = default;
		void build();

		struct State
		{
			Paradigm paradigm;
			std::size_t position;
			std::uint32_t assigned;
			bool accepting = false;
			std::vector<Transition> transitions;
		};

		std::vector<Morpheme> morphemes_;
		std::array<std::vector<SlotSpec>, 2> slots_;
		std::array<StateId, 2> starts_{ 0, 0 };
		std::vector<State> states_;
	};

	/// Root lexical form followed by each morpheme's lexical form.
	LexicalString buildLexical(const RootEntry& root, const std::vector<const Morpheme*>& morphemes);

	/// Lexical strings of every accepted suffix path of length <= maxSuffixes.
	std::vector<LexicalString> enumerateLexicalForms(const Morphotactics& morph, const RootEntry& root, std::size_t maxSuffixes);
}
