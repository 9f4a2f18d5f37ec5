/**
 * Category vocabulary for relevant clone groups.  The twelve canonical
 * labels cover the kinds of specification content that turn out to be
 * duplicated; extension slots let a study add its own labels without
 * touching the canonical list.
 */

export interface Category {
  id: string;
  label: string;
}

export const CANONICAL_CATEGORIES: readonly Category[] = [
  { id: "detailed_use_case_steps", label: "Detailed Use Case Steps" },
  { id: "reference", label: "Reference" },
  { id: "ui", label: "UI" },
  { id: "domain_knowledge", label: "Domain Knowledge" },
  { id: "interface_description", label: "Interface Description" },
  { id: "pre_condition", label: "Pre-Condition" },
  { id: "side_condition", label: "Side-Condition" },
  { id: "configuration", label: "Configuration" },
  { id: "feature", label: "Feature" },
  { id: "technical_domain_knowledge", label: "Technical Domain Knowledge" },
  { id: "post_condition", label: "Post-Condition" },
  { id: "rationale", label: "Rationale" },
] as const;

export class CategoryVocabulary {
  private readonly entries: Category[];

  constructor(extensions: readonly Category[] = []) {
    this.entries = [...CANONICAL_CATEGORIES];
    for (const extension of extensions) {
      this.add(extension);
    }
  }

  add(category: Category): void {
    if (this.entries.some((entry) => entry.id === category.id)) {
      throw new Error(`duplicate category id: ${category.id}`);
    }
    this.entries.push(category);
  }

  all(): readonly Category[] {
    return this.entries;
  }

  has(id: string): boolean {
    return this.entries.some((entry) => entry.id === id);
  }
}
