/** Client copy of the default adaptive numeracy bank.
 *
 * The API accepts answers but does not serve question text, so the default
 * bank ships with the UI. Branching: a correct answer routes to the harder
 * variant of the next level, a wrong one to the easier; four questions are
 * always asked. Must stay in sync with the server's data file when the bank
 * is customized.
 */

export interface NumeracyQuestion {
  id: string;
  prompt: string;
  answer: string;
  ifCorrect: string | null;
  ifWrong: string | null;
}

export const NUMERACY_START = "q1";

export const NUMERACY_BANK: Record<string, NumeracyQuestion> = {
  q1: {
    id: "q1",
    prompt:
      "Imagine rain falls on 1 day out of 10. Out of 1,000 days, on how many days does it rain?",
    answer: "100",
    ifCorrect: "q2_hard",
    ifWrong: "q2_easy",
  },
  q2_hard: {
    id: "q2_hard",
    prompt:
      "In a forest 20% of mushrooms are red, 50% brown and 30% white. A red mushroom is poisonous with a probability of 20%. A mushroom that is not red is poisonous with a probability of 5%. What is the probability (in %) that a poisonous mushroom in the forest is red?",
    answer: "50",
    ifCorrect: "q3_hard",
    ifWrong: "q3_easy",
  },
  q2_easy: {
    id: "q2_easy",
    prompt:
      "Out of 1,000 people in a small town, 500 are members of a choir. Out of these 500 members, 100 are men. Out of the 500 inhabitants that are not in the choir, 300 are men. What is the probability (in %) that a randomly drawn man is a member of the choir?",
    answer: "25",
    ifCorrect: "q3_hard",
    ifWrong: "q3_easy",
  },
  q3_hard: {
    id: "q3_hard",
    prompt:
      "Imagine throwing a five-sided die 50 times. On average, out of these 50 throws, how many times would the die show an odd number (1, 3 or 5)?",
    answer: "30",
    ifCorrect: "q4_hard",
    ifWrong: "q4_easy",
  },
  q3_easy: {
    id: "q3_easy",
    prompt: "Imagine tossing a fair coin 100 times. On average, how many times would it land heads?",
    answer: "50",
    ifCorrect: "q4_hard",
    ifWrong: "q4_easy",
  },
  q4_hard: {
    id: "q4_hard",
    prompt:
      "In a lottery the chance of winning is 1 in 200. If 1,000 people each buy a single ticket, how many of them are expected to win?",
    answer: "5",
    ifCorrect: null,
    ifWrong: null,
  },
  q4_easy: {
    id: "q4_easy",
    prompt:
      "A box holds 2 winning tickets and 8 losing tickets. What is the chance (in %) of drawing a winning ticket?",
    answer: "20",
    ifCorrect: null,
    ifWrong: null,
  },
};

export function isCorrect(question: NumeracyQuestion, given: string): boolean {
  const a = Number(given);
  const b = Number(question.answer);
  return Number.isFinite(a) && Math.abs(a - b) < 1e-9;
}

export function nextQuestion(question: NumeracyQuestion, given: string): string | null {
  return isCorrect(question, given) ? question.ifCorrect : question.ifWrong;
}
